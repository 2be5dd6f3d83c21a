"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input parse error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import struct
import sys
import warnings
from pathlib import Path

import numpy as np

from flatspectra import engine, opcount
from flatspectra.core import is_power_of_two
from flatspectra.engine import FilterSpec, FlatField, SkewedSpectrum
from flatspectra.errors import (
    DomainError,
    FilterConfigError,
    PPMError,
    VerificationCapError,
)
from flatspectra.image import load_image, make_test_image, save_image, spectrum_view, write_ppm
from flatspectra.skew import Shape

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_IO = 3

SPECTRUM_MAGIC = b"FSP1"
VERIFY_TOLERANCE = 1e-9


class SpectrumFormatError(ValueError):
    pass


def encode_spectrum(spectrum: SkewedSpectrum) -> bytes:
    """``FSP1``, u32 axis count, u32 axis lengths, then Q (re, im) f64 pairs, all LE."""
    dims = spectrum.shape.dims
    header = SPECTRUM_MAGIC + struct.pack(f"<{len(dims) + 1}I", len(dims), *dims)
    return header + spectrum.samples.astype("<c16").tobytes()


def decode_spectrum(data: bytes) -> SkewedSpectrum:
    if data[:4] != SPECTRUM_MAGIC:
        raise SpectrumFormatError(f"bad magic {data[:4]!r} at byte offset 0")
    if len(data) < 8:
        raise SpectrumFormatError("truncated header at byte offset 4")
    (ndim,) = struct.unpack_from("<I", data, 4)
    end = 8 + 4 * ndim
    if ndim < 1 or len(data) < end:
        raise SpectrumFormatError(f"bad axis count {ndim} at byte offset 4")
    dims = struct.unpack_from(f"<{ndim}I", data, 8)
    try:
        shape = Shape(dims)
    except DomainError as exc:
        raise SpectrumFormatError(f"{exc} at byte offset 8") from None
    payload = data[end:]
    if len(payload) != 16 * shape.size:
        raise SpectrumFormatError(
            f"payload is {len(payload)} bytes, expected {16 * shape.size} (byte offset {end})"
        )
    return SkewedSpectrum(shape, np.frombuffer(payload, dtype="<c16").astype(np.complex128))


def read_spectrum(path) -> SkewedSpectrum:
    return decode_spectrum(Path(path).read_bytes())


def write_spectrum(spectrum: SkewedSpectrum, path) -> None:
    Path(path).write_bytes(encode_spectrum(spectrum))


def _warn_direct(shape: Shape) -> None:
    if not is_power_of_two(shape.size):
        print(
            f"warning: {shape} has Q={shape.size}, not a power of two; "
            "falling back to the O(Q^2) direct transform",
            file=sys.stderr,
        )


def cmd_forward(args) -> int:
    field = load_image(args.input)
    _warn_direct(field.shape)
    spectrum = engine.forward(field)
    write_spectrum(spectrum, args.output)
    if args.view:
        write_ppm(spectrum_view(spectrum), args.view)
    return EXIT_OK


def cmd_inverse(args) -> int:
    spectrum = read_spectrum(args.input)
    if spectrum.shape.ndim != 2:
        raise DomainError("only 2-D spectra can be written as images")
    _warn_direct(spectrum.shape)
    save_image(engine.inverse(spectrum), args.output)
    return EXIT_OK


def cmd_filter(args) -> int:
    spec = FilterSpec(args.kind, args.radius, args.preserve_dc)
    field = load_image(args.input)
    _warn_direct(field.shape)
    filtered = engine.apply_filter(engine.forward(field), spec)
    save_image(engine.inverse(filtered), args.output)
    return EXIT_OK


def cmd_spectrum_view(args) -> int:
    write_ppm(spectrum_view(read_spectrum(args.input)), args.output)
    return EXIT_OK


def cmd_gen_test_image(args) -> int:
    shape = Shape.parse(args.shape)
    if shape.ndim != 2:
        raise DomainError("test image shape must be WxH")
    write_ppm(make_test_image(*shape.dims), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    shape = Shape.parse(args.shape)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for _ in range(args.trials):
            samples = rng.standard_normal(shape.size) + 1j * rng.standard_normal(shape.size)
            worst = max(worst, engine.verify_identity(FlatField(shape, samples)))
    ok = worst < VERIFY_TOLERANCE
    print(f"shape {shape}  trials {args.trials}  max relative error {worst:.3e}  {'OK' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_bench(args) -> int:
    comparison = opcount.compare(Shape.parse(args.shape))
    print(comparison.table())
    sizes = sorted({comparison.shape.dims[0], comparison.shape.dims[1], comparison.shape.size})
    print()
    print("n,model_mults,measured_mults")
    for n in sizes:
        print(opcount.count_line(n))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatspectra",
        description="Multi-dimensional spectra from a single 1-D FFT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="image -> raw skewed spectrum")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--view", metavar="PPM", help="also write a centred log-magnitude picture")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("inverse", help="raw spectrum -> image")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("filter", help="forward, mask, inverse in one go")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--kind", choices=("lowpass", "highpass", "allpass"), default="allpass")
    p.add_argument("--radius", type=float, help="cutoff in normalised frequency (0.5 = Nyquist)")
    p.add_argument("--preserve-dc", action="store_true")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("spectrum-view", help="raw spectrum -> viewable picture")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_spectrum_view)

    p = sub.add_parser("gen-test-image", help="write the synthetic test picture")
    p.add_argument("output")
    p.add_argument("--shape", default="256x256")
    p.set_defaults(func=cmd_gen_test_image)

    p = sub.add_parser("verify", help="check the skewed-grid identity by direct sums")
    p.add_argument("--shape", required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="multiplication-count comparison")
    p.add_argument("--shape", default="256x256")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "filter" and (args.kind == "allpass") != (args.radius is None):
        print("error: --radius is required for lowpass/highpass and not allowed for allpass", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (PPMError, SpectrumFormatError, DomainError, FilterConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
