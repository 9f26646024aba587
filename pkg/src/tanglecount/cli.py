"""Command-line front end.

Subcommands: count (tables of f / t_tilde / t), guess (find a recurrence),
extend (unroll a recurrence file), cross-check (oracle comparisons),
verify-lemma (functional-equation check), asym (asymptotics report).

Sequence files are one decimal integer per line, index implicit from 0,
with '#' comment lines; the first comment records label, k and generator
version.  Recurrence files are JSON with order, degree and coeff_polys as
arrays of decimal strings, constant term first.  All outputs are
deterministic; exit status is 0 only if every check in the invocation
passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .asymptotics import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_RICHARDSON_DEPTH,
    analyze,
)
from .errors import SingularLeadingCoefficientError, TangleError
from .recurrence import (
    GuessConfig,
    PRecurrence,
    extend_sequence,
    guess_recurrence,
    required_terms,
    verify_recurrence,
)
from .series import matching_counts_via_determinant, verify_functional_equation
from .transforms import CountSequence, matching_sequence, t_from_tilde, tilde_from_f
from .walks import (
    DEFAULT_BRUTE_FORCE_BOUND,
    DEFAULT_STATE_CAP,
    StepRegime,
    count_day_walks_brute,
    count_matchings_prefix,
    count_tangled_prefix,
)

OK, FAIL, USAGE = 0, 1, 2
GENERATOR = f"tanglecount {__version__}"
DEFAULT_PIVOT = 60
OVERLAP = 20
LABELS = ("f", "t_tilde", "t")


@dataclass
class RunConfig:
    command: str
    k: int = 2
    n_max: int = 0
    fmt: str = "plain"
    out: str | None = None
    via: str = "auto"
    pivot: int = DEFAULT_PIVOT
    state_cap: int = DEFAULT_STATE_CAP
    bf_bound: int = DEFAULT_BRUTE_FORCE_BOUND
    order: int = 40
    depth: int = DEFAULT_RICHARDSON_DEPTH
    precision_bits: int = DEFAULT_PRECISION_BITS
    terms: int | None = None
    max_order: int = 8
    max_degree: int = 14
    margin: int = 10
    seq_label: str = "t"
    rec_path: str | None = None
    seed_file: str | None = None
    check_file: str | None = None
    check_label: str = "t"


# ---------------------------------------------------------------------------
# sequence and recurrence files

def write_sequence_lines(label: str, k: int, values) -> list[str]:
    lines = [f"# label={label} k={k} generator={GENERATOR}"]
    lines.extend(str(v) for v in values)
    return lines


def parse_sequence_file(path: str) -> tuple[dict, list[int]]:
    meta: dict = {}
    values: list[int] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, _, val = token.partition("=")
                    meta.setdefault(key, val)
            continue
        values.append(int(line))
    if not values:
        raise ValueError(f"{path}: no values found")
    return meta, values


def load_recurrence(path: str) -> PRecurrence:
    return PRecurrence.from_json_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# shared pipeline pieces

def dp_sequences(k: int, n_max: int, state_cap: int):
    """f (to 2*n_max), t_tilde and t (to n_max), all from the step DP."""
    f_vals = count_matchings_prefix(k, 2 * n_max, state_cap=state_cap)
    f_seq = CountSequence("f", k, tuple(f_vals))
    tt_seq = tilde_from_f(f_seq, n_max)
    t_seq = t_from_tilde(tt_seq, n_max)
    return f_seq, tt_seq, t_seq


def _fill_from_pipeline(k: int, label: str, state_cap: int):
    def fill(index: int) -> int:
        f_seq, tt_seq, t_seq = dp_sequences(k, index, state_cap)
        if label == "f":  # index counts even positions here
            return f_seq[2 * index]
        return (tt_seq if label == "t_tilde" else t_seq)[index]

    return fill


def extend_with_fallback(rec: PRecurrence, seed, n_max: int, fill):
    """Unroll a recurrence; a vanishing leading coefficient is bridged by
    filling that single term from the exact pipeline, then resuming."""
    values = list(seed)
    fallbacks: list[int] = []
    while len(values) <= n_max:
        try:
            return extend_sequence(rec, values, n_max), fallbacks
        except SingularLeadingCoefficientError as exc:
            values = extend_sequence(rec, values, exc.missing_index - 1)
            values.append(fill(exc.missing_index))
            fallbacks.append(exc.missing_index)
    return values[: n_max + 1], fallbacks


def guessed_extension(k: int, label: str, n_max: int, cfg: RunConfig):
    """DP prefix -> guessed recurrence -> extension to n_max, with a
    20-term overlap verified against the DP.

    For label "f" everything is in terms of the even-index matching
    counts (the odd entries are identically zero); n_max then bounds the
    even index, i.e. vertices up to 2*n_max.
    """
    gcfg = GuessConfig(cfg.max_order, cfg.max_degree, cfg.margin)
    length = max(cfg.pivot, cfg.terms or 0, required_terms(gcfg))
    f_vals = count_matchings_prefix(k, 2 * length, state_cap=cfg.state_cap)
    if label == "f":
        prefix = [f_vals[2 * j] for j in range(length + 1)]
    else:
        f_seq = CountSequence("f", k, tuple(f_vals))
        tt = tilde_from_f(f_seq, length)
        prefix = list((tt if label == "t_tilde" else t_from_tilde(tt, length)).values)
    rec = guess_recurrence(prefix, gcfg)
    if rec is None:
        raise TangleError(
            f"no recurrence for {label} (k={k}) within order <= "
            f"{cfg.max_order}, degree <= {cfg.max_degree}; raise the bounds"
        )
    if n_max < len(prefix):
        return prefix[: n_max + 1], rec, {"dp_terms": len(prefix), "fallbacks": []}
    seed = prefix[: len(prefix) - OVERLAP]
    extended, fallbacks = extend_with_fallback(
        rec, seed, n_max, _fill_from_pipeline(k, label, cfg.state_cap)
    )
    overlap = extended[len(seed): len(prefix)]
    if overlap != prefix[len(seed):]:
        first = next(
            i for i, (a, b) in enumerate(zip(overlap, prefix[len(seed):])) if a != b
        )
        raise TangleError(
            f"recurrence extension disagrees with DP for {label} at index "
            f"{len(seed) + first}"
        )
    info = {
        "dp_terms": len(prefix),
        "overlap_verified": OVERLAP,
        "order": rec.order,
        "degree": rec.degree,
        "fallbacks": fallbacks,
    }
    return extended, rec, info


# ---------------------------------------------------------------------------
# output helpers

def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True))


def _write_out(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_count(cfg: RunConfig) -> int:
    k, n_max = cfg.k, cfg.n_max
    use_dp = cfg.via == "dp" or (cfg.via == "auto" and n_max <= cfg.pivot)
    sequences: dict[str, list[int]] = {}
    strategy: dict[str, str] = {}
    if use_dp:
        f_seq, tt_seq, t_seq = dp_sequences(k, n_max, cfg.state_cap)
        sequences = {
            "f": list(f_seq.values),
            "t_tilde": list(tt_seq.values),
            "t": list(t_seq.values),
        }
        strategy = {label: "dp for all terms" for label in LABELS}
    else:
        for label in LABELS:
            values, rec, info = guessed_extension(k, label, n_max, cfg)
            if label == "f":
                flat = []
                for v in values:
                    flat.extend((v, 0))
                values = flat[:-1][: 2 * n_max + 1]
            sequences[label] = values
            dp_upto = info["dp_terms"] - 1
            strategy[label] = (
                f"dp for n<={dp_upto}; recurrence(order={info['order']},"
                f"degree={info['degree']}) beyond, overlap {OVERLAP} verified"
                if "order" in info
                else "dp for all terms"
            )

    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "count",
                "k": k,
                "n_max": n_max,
                "strategy": strategy,
                "sequences": {
                    lbl: [str(v) for v in vals] for lbl, vals in sequences.items()
                },
            }
        )
    elif cfg.fmt == "csv":
        _emit("label,index,value")
        for label in LABELS:
            for i, v in enumerate(sequences[label]):
                _emit(f"{label},{i},{v}")
    else:
        for label in LABELS:
            _emit(f"# strategy[{label}]: {strategy[label]}")
        if cfg.out is None:
            for label in LABELS:
                for line in write_sequence_lines(label, k, sequences[label]):
                    _emit(line)
    if cfg.out is not None:
        out_dir = Path(cfg.out)
        for label in LABELS:
            _write_out(
                out_dir / f"{label}_k{k}.txt",
                write_sequence_lines(label, k, sequences[label]),
            )
        _emit(f"# wrote {', '.join(LABELS)} to {out_dir}")
    return OK


def cmd_guess(cfg: RunConfig) -> int:
    k, label = cfg.k, cfg.seq_label
    gcfg = GuessConfig(cfg.max_order, cfg.max_degree, cfg.margin)
    length = max(cfg.terms or 0, required_terms(gcfg))
    f_vals = count_matchings_prefix(k, 2 * length, state_cap=cfg.state_cap)
    if label == "f":
        prefix = [f_vals[2 * j] for j in range(length + 1)]
    else:
        f_seq = CountSequence("f", k, tuple(f_vals))
        tt = tilde_from_f(f_seq, length)
        prefix = list((tt if label == "t_tilde" else t_from_tilde(tt, length)).values)
    rec = guess_recurrence(prefix, gcfg)
    if rec is None:
        _emit(
            f"NOT FOUND: no recurrence for {label} (k={k}) with order <= "
            f"{cfg.max_order}, degree <= {cfg.max_degree} on {len(prefix)} terms"
        )
        return FAIL
    check = verify_recurrence(rec, prefix)
    payload = {
        "command": "guess",
        "k": k,
        "sequence": label,
        "terms_used": len(prefix),
        "verify_margin": cfg.margin,
        "verified": check.passed,
        **rec.to_json_dict(),
    }
    if cfg.fmt == "json":
        _emit_json(payload)
    else:
        _emit(
            f"recurrence for {label} (k={k}): order {rec.order}, "
            f"degree {rec.degree}, verified on {len(prefix)} terms "
            f"(margin {cfg.margin})"
        )
        for j, poly in enumerate(rec.coeff_polys):
            _emit(f"  p_{j}(n) = {list(poly)}")
    if cfg.out is not None:
        _write_out(Path(cfg.out), [json.dumps(rec.to_json_dict(), sort_keys=True)])
        _emit(f"# wrote recurrence to {cfg.out}")
    return OK if check.passed else FAIL


def cmd_extend(cfg: RunConfig) -> int:
    if cfg.rec_path is None:
        raise ValueError("extend requires --rec FILE")
    rec = load_recurrence(cfg.rec_path)
    k, label, n_max = cfg.k, cfg.seq_label, cfg.n_max
    if cfg.seed_file is not None:
        _meta, seed = parse_sequence_file(cfg.seed_file)
    else:
        need = max(rec.order, 1)
        f_vals = count_matchings_prefix(k, 2 * need, state_cap=cfg.state_cap)
        if label == "f":
            seed = [f_vals[2 * j] for j in range(need + 1)]
        else:
            f_seq = CountSequence("f", k, tuple(f_vals))
            tt = tilde_from_f(f_seq, need)
            seed = list((tt if label == "t_tilde" else t_from_tilde(tt, need)).values)
    values, fallbacks = extend_with_fallback(
        rec, seed, n_max, _fill_from_pipeline(k, label, cfg.state_cap)
    )
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "extend",
                "k": k,
                "sequence": label,
                "n_max": n_max,
                "fallback_indices": fallbacks,
                "values": [str(v) for v in values],
            }
        )
    elif cfg.fmt == "csv":
        _emit("index,value")
        for i, v in enumerate(values):
            _emit(f"{i},{v}")
    else:
        if fallbacks:
            _emit(f"# dp fallback at indices {fallbacks}")
        for line in write_sequence_lines(label, k, values):
            _emit(line)
    if cfg.out is not None:
        _write_out(Path(cfg.out), write_sequence_lines(label, k, values))
        _emit(f"# wrote {label} to {cfg.out}")
    return OK


def _first_divergence(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i, x, y
    return None


def cmd_cross_check(cfg: RunConfig) -> int:
    k, n_max = cfg.k, cfg.n_max
    results = []

    def record(name: str, rng: str, left, right):
        div = _first_divergence(left, right)
        results.append(
            {
                "check": name,
                "range": rng,
                "passed": div is None,
                "divergence": None
                if div is None
                else {"index": div[0], "left": str(div[1]), "right": str(div[2])},
            }
        )

    f_seq, tt_seq, t_seq = dp_sequences(k, n_max, cfg.state_cap)
    day_t = count_tangled_prefix(
        k, n_max, StepRegime.LAZY_ENERGETIC_DAYS, state_cap=cfg.state_cap
    )
    day_tt = count_tangled_prefix(
        k, n_max, StepRegime.ENERGETIC_DAYS, state_cap=cfg.state_cap
    )

    n_bf = min(n_max, cfg.bf_bound)
    brute_t = [
        count_day_walks_brute(k, n, StepRegime.LAZY_ENERGETIC_DAYS, bound=cfg.bf_bound)
        for n in range(n_bf + 1)
    ]
    brute_tt = [
        count_day_walks_brute(k, n, StepRegime.ENERGETIC_DAYS, bound=cfg.bf_bound)
        for n in range(n_bf + 1)
    ]
    record("brute-force enumeration vs day DP (t)", f"n<={n_bf}", brute_t, day_t[: n_bf + 1])
    record(
        "brute-force enumeration vs day DP (t_tilde)",
        f"n<={n_bf}",
        brute_tt,
        day_tt[: n_bf + 1],
    )
    record("day DP vs transforms over DP f (t)", f"n<={n_max}", day_t, list(t_seq.values))
    record(
        "day DP vs transforms over DP f (t_tilde)",
        f"n<={n_max}",
        day_tt,
        list(tt_seq.values),
    )

    det_evens = matching_counts_via_determinant(k, 2 * n_max)
    dp_evens = [f_seq[2 * j] for j in range(n_max + 1)]
    record("determinant vs DP matching counts", f"2n<={2 * n_max}", det_evens, dp_evens)
    det_f = matching_sequence(k, det_evens)
    det_tt = tilde_from_f(det_f, n_max)
    det_t = t_from_tilde(det_tt, n_max)
    record(
        "transforms over determinant vs over DP (t)",
        f"n<={n_max}",
        list(det_t.values),
        list(t_seq.values),
    )

    if cfg.check_file is not None:
        meta, file_vals = parse_sequence_file(cfg.check_file)
        label = meta.get("label", cfg.check_label)
        reference = {
            "f": list(f_seq.values),
            "t_tilde": list(tt_seq.values),
            "t": list(t_seq.values),
        }[label]
        upto = min(len(file_vals), len(reference))
        record(
            f"file {cfg.check_file} vs computed {label}",
            f"index<{upto}",
            file_vals[:upto],
            reference[:upto],
        )

    all_passed = all(r["passed"] for r in results)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "cross-check",
                "k": k,
                "n_max": n_max,
                "passed": all_passed,
                "checks": results,
            }
        )
    else:
        for r in results:
            status = "PASS" if r["passed"] else "FAIL"
            line = f"[{status}] {r['check']}  ({r['range']})"
            if r["divergence"]:
                d = r["divergence"]
                line += (
                    f"  first divergence at index {d['index']}: "
                    f"{d['left']} vs {d['right']}"
                )
            _emit(line)
        _emit(f"cross-check: {'PASS' if all_passed else 'FAIL'}")
    return OK if all_passed else FAIL


def cmd_verify_lemma(cfg: RunConfig) -> int:
    k, order = cfg.k, cfg.order
    f_vals = count_matchings_prefix(k, order, state_cap=cfg.state_cap)
    f_seq = CountSequence("f", k, tuple(f_vals))
    n_t = order // 2
    t_seq = t_from_tilde(tilde_from_f(f_seq, n_t), n_t)
    report = verify_functional_equation(k, order, t_seq, f_seq)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "verify-lemma",
                "k": k,
                "order": order,
                "passed": report.passed,
                "first_mismatch_order": report.first_mismatch_order,
            }
        )
    else:
        _emit(str(report))
        _emit(f"verify-lemma: {'PASS' if report.passed else 'FAIL'}")
    return OK if report.passed else FAIL


def cmd_asym(cfg: RunConfig) -> int:
    k, n_max = cfg.k, cfg.n_max
    use_dp = cfg.via == "dp" or (cfg.via == "auto" and n_max <= cfg.pivot)
    if use_dp:
        _f, _tt, t_seq = dp_sequences(k, n_max, cfg.state_cap)
        values = list(t_seq.values)
    else:
        values, _rec, _info = guessed_extension(k, "t", n_max, cfg)
    report = analyze(
        values, k, depth=cfg.depth, precision_bits=cfg.precision_bits
    )
    if cfg.fmt == "json":
        _emit_json({"command": "asym", **report.to_json_dict()})
    else:
        pred = report.predicted
        _emit(f"asymptotics report: k={k}, n in [{report.n_used[0]}, {report.n_used[1]}]")
        _emit(
            f"  growth:   estimated {report.estimated_growth}  "
            f"predicted {pred.growth}  rel.err {report.relative_errors['growth']}"
        )
        _emit(
            f"  exponent: estimated {report.estimated_exponent}  "
            f"predicted {pred.exponent}  rel.err {report.relative_errors['exponent']}"
        )
        _emit(
            f"  constant: estimated {report.estimated_ck}  "
            f"(no closed form; window spread {report.ck_window_spread})"
        )
        _emit(f"  rho = {pred.rho}, tau = {pred.tau}, tau*growth = 1 exactly")
    return OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanglecount",
        description="Exact counting and asymptotics of k-noncrossing tangled diagrams.",
    )
    parser.add_argument("--version", action="version", version=GENERATOR)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_max_default=None):
        p.add_argument("--k", type=int, required=True, help="crossing bound, k >= 2")
        p.add_argument(
            "--format",
            choices=("plain", "json", "csv"),
            default="plain",
            dest="fmt",
        )
        p.add_argument("--out", default=None, help="output file or directory")
        p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
        if n_max_default is not None:
            p.add_argument("--n-max", type=int, default=n_max_default)

    p_count = sub.add_parser("count", help="compute f, t_tilde and t tables")
    common(p_count, n_max_default=10)
    p_count.add_argument("--via", choices=("dp", "recurrence", "auto"), default="auto")
    p_count.add_argument("--pivot", type=int, default=DEFAULT_PIVOT)
    p_count.add_argument("--terms", type=int, default=None)
    p_count.add_argument("--max-order", type=int, default=8)
    p_count.add_argument("--max-degree", type=int, default=14)
    p_count.add_argument("--margin", type=int, default=10)

    p_guess = sub.add_parser("guess", help="guess a recurrence from DP terms")
    common(p_guess)
    p_guess.add_argument("--seq", choices=LABELS, default="t", dest="seq_label")
    p_guess.add_argument("--terms", type=int, default=None)
    p_guess.add_argument("--max-order", type=int, default=8)
    p_guess.add_argument("--max-degree", type=int, default=14)
    p_guess.add_argument("--margin", type=int, default=10)

    p_extend = sub.add_parser("extend", help="extend a sequence via a recurrence file")
    common(p_extend, n_max_default=1000)
    p_extend.add_argument("--rec", required=True, dest="rec_path")
    p_extend.add_argument("--seq", choices=LABELS, default="t", dest="seq_label")
    p_extend.add_argument("--seed-file", default=None)

    p_cc = sub.add_parser("cross-check", help="run all oracle comparisons")
    common(p_cc, n_max_default=8)
    p_cc.add_argument("--bf-bound", type=int, default=DEFAULT_BRUTE_FORCE_BOUND)
    p_cc.add_argument("--check-file", default=None)
    p_cc.add_argument("--check-label", choices=LABELS, default="t")

    p_lemma = sub.add_parser("verify-lemma", help="verify the functional equation")
    common(p_lemma)
    p_lemma.add_argument("--order", type=int, default=40)

    p_asym = sub.add_parser("asym", help="asymptotics report")
    common(p_asym, n_max_default=1000)
    p_asym.add_argument("--via", choices=("dp", "recurrence", "auto"), default="auto")
    p_asym.add_argument("--pivot", type=int, default=DEFAULT_PIVOT)
    p_asym.add_argument("--terms", type=int, default=None)
    p_asym.add_argument("--max-order", type=int, default=8)
    p_asym.add_argument("--max-degree", type=int, default=14)
    p_asym.add_argument("--margin", type=int, default=10)
    p_asym.add_argument("--depth", type=int, default=DEFAULT_RICHARDSON_DEPTH)
    p_asym.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION_BITS)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


HANDLERS = {
    "count": cmd_count,
    "guess": cmd_guess,
    "extend": cmd_extend,
    "cross-check": cmd_cross_check,
    "verify-lemma": cmd_verify_lemma,
    "asym": cmd_asym,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        return HANDLERS[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except TangleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
