"""Command-line surface.

Subcommands
-----------
* ``inspect``    adjoint, normality, self-adjointness, modulus, polar and
                 pseudoinverse summary for one operator file.
* ``identities`` the dagger/adjoint/modulus identity suite, the polar
                 commutation and modulus-swap normality criteria, and the
                 power commutation checks.
* ``spectrum``   circle radii with the realification membership crosscheck.
* ``numrange``   numerical-range disk, sampling bounds and witnesses.
* ``block``      complements, factorization residuals, correspondence scan
                 and rank link for a block operator file.
* ``extension``  minimality span criterion against the word-span oracle for
                 a seeded random subspace of the ambient operator.
* ``gen``        seeded instance generation (byte-identical per seed).

Exit codes: 0 all checks pass, 1 at least one check failed, 2 malformed
input or usage error (one-line diagnostic, never a stack trace).
"""

from __future__ import annotations

import argparse
import sys
from math import ceil
from typing import Optional, Sequence

import numpy as np

from . import __version__, structure
from .antiop import AntilinearOperator, Conjugation, realify
from .blockops import (
    SELECTORS,
    BlockAntilinearMatrix,
    complement,
    correspondence_scan,
    rank_link,
    structured_mu_samples,
    verify_factorization,
)
from .errors import AntilinError, NotNormal, OutsideRange, PivotSingular
from .extensions import ExtensionProblem, check_extension, minimal_span, word_span_oracle
from .generators import KINDS, crandn, gen_payload
from .io import InvalidOperatorFile, dump_payload, load_operator
from .matkernel import range_projector, spectral_norm
from .numrange import nr_disk, nr_value, sample_sup, witness_disk, witness_segment
from .reporting import Report, emit_csv, emit_json
from .spectra import antilinear_spectrum, spectrum_crosscheck

BASE_TOLERANCES = {
    "pairing": 1e-10,
    "psd": 1e-10,
    "polar_reconstruction": 1e-9,
    "projector": 1e-8,
    "identity": 1e-8,
    "power": 1e-10,
    "membership": 1e-8,
    "witness": 1e-8,
    "convexity": 1e-7,
}


class _Usage(Exception):
    """Raised for usage-level problems that should exit with code 2."""


def _tolerances(args) -> dict:
    if args.tol is not None:
        return {k: float(args.tol) for k in BASE_TOLERANCES}
    return dict(BASE_TOLERANCES)


def _cx(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _load_antilinear(args) -> tuple[AntilinearOperator, str, dict]:
    loaded = load_operator(args.input)
    if isinstance(loaded.obj, BlockAntilinearMatrix):
        raise _Usage("block operator files are handled by the 'block' subcommand")
    if isinstance(loaded.obj, Conjugation):
        return loaded.obj.as_operator(), loaded.digest, {"kind": "conjugation"}
    return loaded.obj, loaded.digest, {"kind": loaded.kind}


def _pairing_residual(t: AntilinearOperator, rng: np.random.Generator, pairs: int = 100) -> float:
    a = t.canon
    m, n = a.shape
    x = crandn(rng, n, pairs)
    y = crandn(rng, m, pairs)
    tx = a @ np.conj(x)
    tsy = a.T @ np.conj(y)
    lhs = np.conj(np.sum(tx * np.conj(y), axis=0))
    rhs = np.sum(x * np.conj(tsy), axis=0)
    return float(np.max(np.abs(lhs - rhs)))


def _min_eig_defect(h: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
    return float(max(0.0, -vals[0])) if vals.size else 0.0


def cmd_inspect(args, report: Report) -> None:
    t, digest, info = _load_antilinear(args)
    report.input_digest = digest
    tols = _tolerances(args)
    rng = np.random.default_rng(args.seed)
    a = t.canon
    scale = spectral_norm(a)

    bidual = 0.0 if np.array_equal(t.adjoint().adjoint().canon, a) else 1.0
    report.add("adjoint_biduality", bidual, 0.0)
    report.add("adjoint_pairing", _pairing_residual(t, rng), tols["pairing"] * (1 + scale))

    left, right = structure.gram(t)
    report.add("gram_left_psd", _min_eig_defect(left), tols["psd"] * (1 + scale**2))
    report.add("gram_right_psd", _min_eig_defect(right), tols["psd"] * (1 + scale**2))

    p = structure.polar(t)
    report.add(
        "polar_reconstruction",
        spectral_norm(a - p.u.canon @ np.conj(p.modulus)),
        tols["polar_reconstruction"] * (1 + scale),
    )
    uc = p.u.canon
    report.add(
        "polar_partial_isometry",
        spectral_norm(uc @ uc.conj().T @ uc - uc),
        tols["projector"],
    )
    report.add(
        "polar_initial_space",
        spectral_norm(p.initial_projector() - range_projector(p.modulus)),
        tols["projector"],
    )
    report.add(
        "polar_final_space",
        spectral_norm(p.final_projector() - range_projector(a)),
        tols["projector"],
    )

    mp = structure.moore_penrose(t)
    report.add("mp_left_projector", mp.residuals["left_projector"], tols["identity"])
    report.add(
        "mp_oracle_agreement",
        mp.residuals["oracle_agreement"],
        tols["identity"] * (1 + spectral_norm(mp.dagger.canon)),
    )
    report.add("mp_right_projector", mp.residuals["right_projector"], tols["identity"])

    report.summary.update(info)
    report.summary["dims"] = [t.dim_out, t.dim_in]
    report.summary["canon_norm"] = scale
    if t.dim_in == t.dim_out:
        normal = structure.is_normal(t)
        cn_value, cn_residual = structure.c_normal_criterion(t)
        agree = int(normal.value != normal.sampled_value) + int(normal.value != cn_value)
        report.add("normality_criteria_agree", float(agree), 0.0)
        report.summary["is_normal"] = bool(normal)
        report.summary["normality_residual"] = normal.residual
        report.summary["is_selfadjoint"] = structure.is_selfadjoint(t)
        report.summary["spectrum_radii"] = list(antilinear_spectrum(t).radii)
        report.summary["numerical_range_radius"] = nr_disk(t).radius


def cmd_identities(args, report: Report) -> None:
    t, digest, info = _load_antilinear(args)
    report.input_digest = digest
    tols = _tolerances(args)
    scale = spectral_norm(t.canon)

    suite = structure.identity_suite(t, tol=tols["identity"])
    for name, residual in sorted(suite.residuals.items()):
        report.add(f"mp_{name}", residual, tols["identity"])
    if suite.classification_consistent is not None:
        report.add(
            "mp_projector_range_consistency",
            0.0 if suite.classification_consistent else 1.0,
            0.0,
        )
        report.summary["projector_gap"] = suite.projector_gap
        report.summary["range_gap"] = suite.range_gap

    if t.dim_in == t.dim_out:
        normal = structure.is_normal(t)
        cn_value, cn_residual = structure.c_normal_criterion(t)
        report.add(
            "c_normal_agrees_is_normal",
            0.0 if cn_value == normal.value else 1.0,
            0.0,
        )
        report.summary["is_normal"] = bool(normal)
        report.summary["c_normal_residual"] = cn_residual
        if normal:
            report.add(
                "modulus_conjugation_swap",
                cn_residual,
                tols["identity"] * (1 + scale),
            )
            report.add(
                "polar_commutation",
                structure.check_polar_commutation(t),
                tols["polar_reconstruction"] * (1 + scale),
            )
            for n in (2, 3):
                report.add(
                    f"power_commutation_n{n}",
                    structure.power_commute(t, n),
                    tols["power"] * (1 + scale ** (2 * n)),
                )
    report.summary.update(info)


def cmd_spectrum(args, report: Report) -> None:
    t, digest, info = _load_antilinear(args)
    report.input_digest = digest
    tols = _tolerances(args)
    if t.dim_in != t.dim_out:
        raise _Usage("spectrum requires a square operator")

    check = spectrum_crosscheck(t, phases=8, radial_grid=1, tol=tols["membership"])
    report.add("crosscheck_disagreements", float(len(check.disagreements)), 0.0)

    eigvals = np.linalg.eigvals(t.canon @ np.conj(t.canon))
    closure = 0.0
    for mu in eigvals:
        closure = max(
            closure,
            float(np.min(np.abs(eigvals - np.conj(mu))) / (1.0 + abs(mu))),
        )
    report.add("eig_conjugation_closure", closure, tols["identity"])

    report.summary.update(info)
    report.summary["radii"] = list(check.radii)
    report.summary["clamped_eigenvalues"] = [_cx(z) for z in check.clamped]
    report.summary["members_tested"] = check.members_tested
    report.summary["nonmembers_tested"] = check.nonmembers_tested
    report.summary["classification"] = antilinear_spectrum(t).note


def cmd_numrange(args, report: Report) -> None:
    t, digest, info = _load_antilinear(args)
    report.input_digest = digest
    tols = _tolerances(args)
    if t.dim_in != t.dim_out:
        raise _Usage("numrange requires a square operator")
    rng = np.random.default_rng(args.seed)
    disk = nr_disk(t)
    report.summary.update(info)
    report.summary["radius"] = disk.radius
    report.add(
        "disk_extremal_value",
        abs(abs(nr_value(t, disk.extremal_vector)) - disk.radius),
        tols["witness"],
    )

    raw_sup = sample_sup(t, n_samples=2000, rng=rng, refine=False)
    refined_sup = sample_sup(t, n_samples=200, rng=rng, refine=True)
    report.add("disk_upper_bound", max(0.0, raw_sup - disk.radius), tols["witness"])

    if t.dim_in >= 2:
        report.add(
            "disk_lower_bound",
            max(0.0, 0.95 * disk.radius - max(raw_sup, refined_sup)),
            tols["witness"],
        )
        zero_w = witness_disk(t, 0.0)
        report.add("witness_zero", abs(nr_value(t, zero_w)), tols["witness"])
        if args.target is not None:
            target = complex(*args.target)
            try:
                vec = witness_disk(t, target)
            except OutsideRange as exc:
                raise _Usage(str(exc)) from exc
            report.add(
                "witness_target", abs(nr_value(t, vec) - target), tols["witness"]
            )
            report.summary["target"] = _cx(target)
        fallbacks = 0
        worst = 0.0
        tuples = 25
        for _ in range(tuples):
            x1 = crandn(rng, t.dim_in)
            x2 = crandn(rng, t.dim_in)
            x1 /= np.linalg.norm(x1)
            x2 /= np.linalg.norm(x2)
            lam = float(rng.uniform())
            res = witness_segment(t, x1, x2, lam)
            worst = max(worst, abs(res.value - res.target))
            fallbacks += int(res.used_fallback)
        report.add("convexity_witness", worst, tols["convexity"])
        report.summary["convexity_fallback_rate"] = fallbacks / tuples
    else:
        vals = []
        for _ in range(200):
            x = crandn(rng, 1)
            x /= np.linalg.norm(x)
            vals.append(abs(nr_value(t, x)))
        vals_arr = np.array(vals)
        report.add(
            "circle_modulus_spread",
            float(np.max(np.abs(vals_arr - disk.radius))),
            tols["witness"],
        )
        report.add(
            "circle_zero_gap",
            float(max(0.0, disk.radius - np.min(vals_arr))),
            tols["witness"],
        )
        report.summary["note"] = "dimension one: the numerical range is a circle"


def cmd_block(args, report: Report) -> None:
    loaded = load_operator(args.input)
    if not isinstance(loaded.obj, BlockAntilinearMatrix):
        raise _Usage("the 'block' subcommand requires a block operator file")
    blk = loaded.obj
    report.input_digest = loaded.digest
    tols = _tolerances(args)
    rng = np.random.default_rng(args.seed)

    flat_norm = spectral_norm(realify(blk.flatten()))
    if args.mu:
        mus = list(args.mu)
    else:
        mus = [complex(z) for z in crandn(rng, 5) * 2.0]
    skipped = []
    for idx, mu in enumerate(mus):
        report.summary[f"mu_{idx}"] = _cx(mu)
        for sel in SELECTORS:
            try:
                residual = verify_factorization(blk, mu, sel, tol=tols["membership"])
            except (PivotSingular, AntilinError) as exc:
                skipped.append(f"factorization {sel} at mu_{idx}: {exc}")
            else:
                report.add(
                    f"factorization_{sel}_mu{idx}",
                    residual,
                    tols["identity"] * (1 + flat_norm),
                )
            try:
                comp = complement(blk, sel, mu, tol=tols["membership"])
            except (PivotSingular, AntilinError) as exc:
                skipped.append(f"{sel} at mu_{idx}: {exc}")
                continue
            report.summary[f"pivot_condition_{sel}_mu{idx}"] = comp.pivot_condition

    samples = structured_mu_samples(blk, rng)
    scan = correspondence_scan(blk, samples, tol=tols["membership"])
    report.add("scan_disagreements", float(len(scan.disagreements)), 0.0)
    report.summary["scan_points"] = len(scan.entries)
    report.summary["scan_skipped"] = scan.skipped

    try:
        link = rank_link(blk, tol=tols["membership"])
    except PivotSingular as exc:
        skipped.append(f"rank_link: {exc}")
    else:
        report.add(
            "rank_link_primal",
            0.0 if link.primal_holds else 1.0,
            0.0,
        )
        if link.dual_holds is not None:
            report.add("rank_link_dual", 0.0 if link.dual_holds else 1.0, 0.0)
        report.summary["rank_flat"] = link.rank_flat
        report.summary["f_relative_bound"] = link.f_rel_bound

    report.summary["radii"] = list(antilinear_spectrum(blk.flatten()).radii)
    report.summary["skipped"] = skipped


def cmd_extension(args, report: Report) -> None:
    t, digest, info = _load_antilinear(args)
    report.input_digest = digest
    if t.dim_in != t.dim_out:
        raise _Usage("extension requires a square ambient operator")
    big = t.dim_in
    rng = np.random.default_rng(args.seed)
    h = max(1, ceil(big / 2))
    v, _ = np.linalg.qr(crandn(rng, big, h))
    restricted = AntilinearOperator(v.conj().T @ t.canon @ np.conj(v))
    problem = ExtensionProblem(ambient=t, embed=v, restricted=restricted)

    try:
        span = minimal_span(problem)
        oracle = word_span_oracle(problem, max_len=big + 2)
    except NotNormal as exc:
        raise _Usage(str(exc)) from exc

    report.add("span_oracle_agreement", float(abs(span.g_dim - oracle)), 0.0)
    report.add("span_stabilized_before_cap", 1.0 if span.hit_cap else 0.0, 0.0)

    residuals = check_extension(problem)
    report.summary.update(info)
    report.summary.update(
        {
            "ambient_dim": big,
            "subspace_dim": h,
            "g_dim": span.g_dim,
            "is_minimal": span.is_minimal,
            "stabilized_degree": span.stabilized_degree,
            "extension_match_residual": residuals.match,
            "extension_range_leak": residuals.range_leak,
        }
    )


def cmd_gen(args, report: Report) -> Optional[str]:
    payload = gen_payload(args.kind, args.dim, args.seed, dim2=args.dim2)
    return dump_payload(payload, args.output)


def _parse_mu(text: str) -> list:
    out = []
    for token in text.split(";"):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(complex(token))
        except ValueError as exc:
            raise _Usage(f"cannot parse --mu token {token!r}: {exc}") from exc
    return out


def _parse_target(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _Usage("--target expects RE,IM")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise _Usage(f"cannot parse --target {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antilin",
        description="Verification toolkit for antilinear operator calculus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="operator file (JSON)")
        p.add_argument("--output", default=None, help="write the report here (default stdout)")
        p.add_argument("--tol", type=float, default=None, help="override every base tolerance")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
        p.set_defaults(fmt="json")

    common(sub.add_parser("inspect", help="operator summary and core checks"))
    common(sub.add_parser("identities", help="dagger/adjoint identity suite"))
    common(sub.add_parser("spectrum", help="circle radii with membership crosscheck"))
    p_nr = sub.add_parser("numrange", help="numerical range disk and witnesses")
    common(p_nr)
    p_nr.add_argument("--target", default=None, help="witness target as RE,IM")
    p_blk = sub.add_parser("block", help="block complements, factorizations, scans")
    common(p_blk)
    p_blk.add_argument("--mu", default=None, help="semicolon-separated complex shifts")
    common(sub.add_parser("extension", help="minimality span criterion checks"))

    p_gen = sub.add_parser("gen", help="generate a seeded operator file")
    p_gen.add_argument("--kind", required=True, choices=sorted(KINDS))
    p_gen.add_argument("--dim", type=int, required=True)
    p_gen.add_argument("--dim2", type=int, default=None, help="second dimension (block kind)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--output", default=None, help="write the file here (default stdout)")
    return parser


_HANDLERS = {
    "inspect": cmd_inspect,
    "identities": cmd_identities,
    "spectrum": cmd_spectrum,
    "numrange": cmd_numrange,
    "block": cmd_block,
    "extension": cmd_extension,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 on --help; map everything else onto 2
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2

    try:
        if args.command == "gen":
            text = cmd_gen(args, None)
            if args.output is None and text is not None:
                sys.stdout.write(text)
            return 0

        if getattr(args, "mu", None) is not None and isinstance(args.mu, str):
            args.mu = _parse_mu(args.mu)
        if getattr(args, "target", None) is not None and isinstance(args.target, str):
            args.target = _parse_target(args.target)

        report = Report(
            command=" ".join([args.command] + argv[1:]),
            input_digest="",
            environment={
                "version": __version__,
                "seed": int(args.seed),
                "tolerances": _tolerances(args),
            },
        )
        _HANDLERS[args.command](args, report)
        text = emit_csv(report) if args.fmt == "csv" else emit_json(report)
        if args.output is None:
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        return 0 if report.overall_pass else 1
    except (_Usage, InvalidOperatorFile, AntilinError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
