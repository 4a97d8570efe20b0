"""Command-line front end: matrix generation, verification and reports.

Every command writes deterministic artifacts for a given set of flags (and
seed, where randomness is involved), so outputs are directly comparable in
CI or across machines.  Exit codes: 0 success, 1 a verification check
failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import analysis, complexity, reports
from .factors import FACTOR_LABELS, STAGE_ADDITIONS, SparseFactor, all_factors, build_w
from .radix32 import (APPROX_VARIANTS, SIZE, TransformSpec, Variant, VARIANTS,
                      invvec, transform_1024, transform_matrix, twiddle_matrix, vec)
from .transforms import OUTPUT_SCALE, dft_direct, dft_matrix, fft_radix2

ENV_OUT_DIR = "ADFT1024_OUT_DIR"

_SCHEMES = {
    "paper": complexity.ComplexMultScheme.PAPER_3M3A,
    "gauss": complexity.ComplexMultScheme.GAUSS_3M5A,
    "direct": complexity.ComplexMultScheme.DIRECT_4M2A,
}


@dataclass
class RunConfig:
    """Defaults for every command; a config file may override any field."""

    variant: str = "alg1"
    out_dir: str = ""
    grid_size: int = 8192
    replicates: int = 10_000
    seed: int = 0
    cost_model: str = "paper"
    fmt: str = "csv"

    @classmethod
    def field_names(cls):
        return {f.name for f in fields(cls)}

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        cfg = cls()
        known = cls.field_names()
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            current = getattr(cfg, key)
            setattr(cfg, key, type(current)(value) if not isinstance(current, str) else value)
        return cfg


def _variant(name: str) -> Variant:
    return Variant(name)


def _parse_bins(text: str) -> list[int]:
    try:
        out = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad bin list {text!r}") from exc
    if not out:
        raise argparse.ArgumentTypeError("empty bin list")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adft1024",
        description="Multiplierless approximate-DFT transform and analysis reports.")
    parser.add_argument("--out-dir", help=f"output directory (default ${ENV_OUT_DIR} or .)")
    parser.add_argument("--config", help="key=value config file overriding defaults")
    parser.add_argument("--paper-mode", action="store_true",
                        help="pin grid 8192, replicates 100000 and the 3M/3A cost model")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-matrix", help="emit kernel factors or a dense transform matrix")
    p.add_argument("--variant", choices=[v.value for v in VARIANTS], required=True)
    p.add_argument("--what", choices=["factors", "dense"], default="factors")

    p = sub.add_parser("verify", help="run the invariant suite; exit 1 on any failure")
    p.add_argument("--only", choices=["all", "oracle", "counts", "error"], default="all")
    p.add_argument("--corrupt-factor", choices=list(FACTOR_LABELS),
                   help="(testing aid) flip one coefficient before checking")

    p = sub.add_parser("complexity", help="emit sequential and circuit complexity reports")
    p.add_argument("--model", choices=sorted(_SCHEMES), default=None)
    p.add_argument("--count-trivial", action="store_true",
                   help="cost all 1024 twiddles instead of the 961 nontrivial ones")

    p = sub.add_parser("filterbank", help="emit frequency-response error curves and stats")
    p.add_argument("--variant", choices=[v.value for v in VARIANTS], required=True)
    p.add_argument("--grid-size", type=int, default=None)

    p = sub.add_parser("snr", help="emit Monte-Carlo per-bin SNR estimates")
    p.add_argument("--variant", choices=[v.value for v in APPROX_VARIANTS], required=True)
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bins", type=_parse_bins, default=None,
                   help="comma-separated bin list (default: 64 evenly spaced)")
    p.add_argument("--noise-var", type=float, default=1.0)

    p = sub.add_parser("beams", help="emit beam-pattern CSVs for selected bins")
    p.add_argument("--variant", choices=[v.value for v in VARIANTS], required=True)
    p.add_argument("--bins", type=_parse_bins, required=True)
    p.add_argument("--angles", type=int, default=4096)

    return parser


def _resolve_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    if not cfg.out_dir:
        cfg.out_dir = os.environ.get(ENV_OUT_DIR, ".")
    if args.paper_mode:
        cfg.grid_size = 8192
        cfg.replicates = 100_000
        cfg.cost_model = "paper"
    if getattr(args, "out_dir", None):
        cfg.out_dir = args.out_dir
    for name in ("variant", "grid_size", "replicates", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(args, "model", None):
        cfg.cost_model = args.model
    return cfg


def cmd_gen_matrix(args, cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    variant = _variant(cfg.variant)
    if args.what == "factors":
        if variant is Variant.EXACT:
            print("error: the exact variant has no sparse factors", file=sys.stderr)
            return 2
        for label in FACTOR_LABELS:
            factor = build_w(int(label[1]))
            reports.write_sparse_factor_csv(out / f"{label}.csv", factor)
        print(f"wrote {len(FACTOR_LABELS)} factor files to {out}")
        return 0
    matrix = transform_matrix(TransformSpec(variant))
    path = out / f"dense_{variant.value}.csv"
    reports.write_dense_matrix_csv(path, matrix)
    print(f"wrote {path}")
    return 0


def _check(results: list, name: str, ok: bool, detail: str) -> None:
    results.append((name, bool(ok), detail))


def _verify_oracle(results, rng) -> None:
    worst = 0.0
    for _ in range(200):
        x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        ref = dft_direct(x)
        worst = max(worst, np.linalg.norm(fft_radix2(x) - ref) / np.linalg.norm(ref))
    _check(results, "fft32-vs-direct", worst < 1e-10, f"worst rel err {worst:.2e}")
    x = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    ref = dft_direct(x)
    rel = np.linalg.norm(fft_radix2(x) - ref) / np.linalg.norm(ref)
    _check(results, "fft1024-vs-direct", rel < 1e-9, f"rel err {rel:.2e}")
    worst = 0.0
    batch = rng.standard_normal((SIZE, 5)) + 1j * rng.standard_normal((SIZE, 5))
    got = transform_1024(batch, TransformSpec(Variant.EXACT))
    ref = dft_direct(batch)
    worst = (np.linalg.norm(got - ref, axis=0) / np.linalg.norm(ref, axis=0)).max()
    _check(results, "exact-pipeline-vs-direct", worst < 1e-9, f"worst rel err {worst:.2e}")
    bad = 0.0
    for n in (2, 4, 8, 16, 32):
        f = dft_matrix(n)
        bad = max(bad, np.abs(f @ f.conj().T - np.eye(n)).max())
    _check(results, "unitarity", bad < 1e-10, f"max deviation {bad:.2e}")


def _verify_counts(results, factors) -> None:
    profile = complexity.adft32_addition_profile()
    _check(results, "kernel-additions",
           profile == list(STAGE_ADDITIONS) and sum(profile) == 348,
           f"profile {profile}")
    mults, adds = complexity.count_instrumented_adft32()
    _check(results, "kernel-mult-free", (mults, adds) == (0, 348), f"({mults}, {adds})")
    sizes_ok = all(f.size == 32 for f in factors)
    nnz_ok = all(f.nonzeros_per_row().max() <= 3 for f in factors)
    _check(results, "factor-shapes", sizes_ok and nnz_ok, "32x32, rows <= 3 nonzeros")
    tw = twiddle_matrix()
    _check(results, "twiddle-counts",
           int(tw.trivial_mask.sum()) == 63 and tw.nontrivial_count == 961,
           f"trivial {int(tw.trivial_mask.sum())}, nontrivial {tw.nontrivial_count}")
    seq_ok, all_msgs = True, []
    for variant in VARIANTS:
        rep = complexity.count_sequential(variant)
        if not rep.matches_reference:
            seq_ok = False
        all_msgs.append(f"{variant.value}=({rep.real_mults},{rep.real_adds})")
    _check(results, "sequential-table", seq_ok, " ".join(all_msgs))
    circ_msgs = []
    circ_ok = True
    for variant in VARIANTS:
        rep = complexity.circuit_complexity(variant)
        if variant is Variant.EXACT:
            ok = rep.multiplier_circuits == 252 and rep.adder_circuits == 956
            circ_msgs.append(
                f"exact=({rep.multiplier_circuits},{rep.adder_circuits};"
                f" published {rep.paper_table_values[1]})")
        else:
            ok = rep.matches_paper_table
            circ_msgs.append(f"{variant.value}=({rep.multiplier_circuits},{rep.adder_circuits})")
        circ_ok = circ_ok and ok
    _check(results, "circuit-table", circ_ok, " ".join(circ_msgs))


def _verify_error(results, factors, rng) -> None:
    product = np.eye(32, dtype=complex)
    for f in factors:
        product = f.to_dense() @ product
    integer = (np.all(product.real == np.rint(product.real))
               and np.all(product.imag == np.rint(product.imag)))
    _check(results, "gaussian-integer-closure", integer, "raw product entries")
    k, m = np.meshgrid(np.arange(32), np.arange(32), indexing="ij")
    unnormalized = np.exp(-2j * np.pi * k * m / 32)
    rounded = np.round(unnormalized.real) + 1j * np.round(unnormalized.imag)
    _check(results, "kernel-rounding", np.array_equal(product, rounded),
           "raw product == entrywise rounding of the unnormalized exact kernel")
    invertible = all(abs(np.linalg.det(f.to_dense())) > 1e-9 for f in factors)
    _check(results, "factor-invertibility", invertible, "all eight stages")
    grid = analysis.FrequencyGrid.default(8192)
    h_exact = np.fft.fft(dft_matrix(32) * (-1.0) ** np.arange(32), n=grid.count, axis=1)
    h_hat = np.fft.fft((OUTPUT_SCALE * product) * (-1.0) ** np.arange(32),
                       n=grid.count, axis=1)
    peak = np.abs(h_exact).max(axis=1)
    worst = float((np.abs(h_hat - h_exact).max(axis=1) / peak).max())
    worst_db = 20 * np.log10(worst)
    _check(results, "kernel-response-band", -11.5 <= worst_db <= -9.5,
           f"worst row error {worst_db:.2f} dB")
    x = rng.standard_normal(SIZE) + 1j * rng.standard_normal(SIZE)
    _check(results, "vec-invvec-roundtrip", np.array_equal(vec(invvec(x)), x), "exact")


def cmd_verify(args, cfg: RunConfig) -> int:
    rng = np.random.default_rng(2024)
    factors = list(all_factors())
    if args.corrupt_factor:
        idx = FACTOR_LABELS.index(args.corrupt_factor)
        dirty = factors[idx]
        r, c, v = dirty.entries[-1]
        entries = dirty.entries[:-1] + ((r, c, -v),)
        factors[idx] = SparseFactor(dirty.label, dirty.size, entries)
    results: list = []
    if args.only in ("all", "oracle"):
        _verify_oracle(results, rng)
    if args.only in ("all", "counts"):
        _verify_counts(results, factors)
    if args.only in ("all", "error"):
        _verify_error(results, factors, rng)
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_complexity(args, cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    model = complexity.CostModel(
        complex_mult_scheme=_SCHEMES[cfg.cost_model],
        count_trivial_twiddles=args.count_trivial,
    )
    sequential = [complexity.count_sequential(v, model).to_json_dict() for v in VARIANTS]
    circuits = [complexity.circuit_complexity(v).to_json_dict() for v in VARIANTS]
    reports.write_json(out / "complexity_sequential.json", sequential)
    reports.write_json(out / "complexity_circuit.json", circuits)
    print(f"wrote complexity reports to {out}")
    return 0


def cmd_filterbank(args, cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    variant = _variant(cfg.variant)
    grid = analysis.FrequencyGrid.default(cfg.grid_size)
    stats = analysis.filterbank_error(TransformSpec(variant), grid)
    reports.write_table_csv(
        out / f"filterbank_{variant.value}.csv",
        ("frequency", "lower", "q1", "q2", "q3", "upper"),
        (stats.frequencies, stats.lower_envelope, stats.q1, stats.q2,
         stats.q3, stats.upper_envelope))
    reports.write_json(out / f"filterbank_{variant.value}_stats.json", {
        "variant": variant.value,
        "min_db": stats.min_db,
        "mean_db": stats.mean_db,
        "max_db": stats.max_db,
        "grid_size": cfg.grid_size,
    })
    print(f"wrote filterbank reports for {variant.value} to {out}")
    return 0


def cmd_snr(args, cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    variant = _variant(cfg.variant)
    bins = args.bins if args.bins is not None else list(range(0, SIZE, SIZE // 64))
    if any(b < 0 or b >= SIZE for b in bins):
        print(f"error: bins must lie in 0..{SIZE - 1}", file=sys.stderr)
        return 2
    report = analysis.snr_monte_carlo(
        TransformSpec(variant), bins, replicates=cfg.replicates,
        noise_var=args.noise_var, seed=cfg.seed)
    reports.write_table_csv(
        out / f"snr_{variant.value}.csv",
        ("bin", "snr_exact_db", "snr_variant_db", "degradation_db"),
        (report.bins, report.snr_exact_db, report.snr_variant_db,
         report.degradation_db))
    print(f"wrote snr_{variant.value}.csv (worst degradation "
          f"{report.worst_degradation_db:.3f} dB)")
    return 0


def cmd_beams(args, cfg: RunConfig) -> int:
    out = Path(cfg.out_dir)
    variant = _variant(cfg.variant)
    if any(b < 0 or b >= SIZE for b in args.bins):
        print(f"error: bins must lie in 0..{SIZE - 1}", file=sys.stderr)
        return 2
    angles = analysis.default_angles(args.angles)
    for k in args.bins:
        pattern = analysis.beam_pattern(TransformSpec(variant), k, angles)
        reports.write_table_csv(
            out / f"beam_{variant.value}_{k}.csv",
            ("angle_rad", "gain_re", "gain_im", "gain_abs"),
            (pattern.angles, pattern.gain.real, pattern.gain.imag,
             pattern.magnitude))
    print(f"wrote {len(args.bins)} beam files to {out}")
    return 0


_COMMANDS = {
    "gen-matrix": cmd_gen_matrix,
    "verify": cmd_verify,
    "complexity": cmd_complexity,
    "filterbank": cmd_filterbank,
    "snr": cmd_snr,
    "beams": cmd_beams,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args, cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
