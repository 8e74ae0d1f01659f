"""Algorithm dispatch and the ``peakcheck`` command line.

``dispatch`` picks an engine by order class: a given axis short-circuits to
the axis verifier; top orders go to the unguided algorithm (or guided when an
implicit guiding vote exists); weak orders to guided-if-guiding-vote, else
the consecutive-ones recogniser; local weak orders with a total vote to the
2-SAT engine; anything looser to the brute-force oracle while small enough,
otherwise the NP-hard frontier is reported as an error.

Exit codes: 0 consistent, 1 not consistent, 2 error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import axis_check, c1p, gadgets, oracle, preflib, twosat, unguided
from .errors import (
    ClassError,
    HardnessError,
    NoTotalOrderError,
    PeakcheckError,
    SizeError,
)
from .guided import find_implicit_guiding_vote, guided_recognize
from .model import Axis, Notion, OrderClass, Verdict

ALGORITHMS = ("auto", "c1p", "guided", "unguided", "twosat", "oracle")


def _guiding_vote(profile):
    explicit = profile.first_total_order()
    if explicit is not None:
        return explicit
    if profile.order_class() <= OrderClass.WEAK:
        return find_implicit_guiding_vote(profile)
    return None


def dispatch(profile, notion=Notion.PSP, algorithm="auto", given_axis=None,
             oracle_bound=oracle.DEFAULT_BOUND):
    """Run the selected (or automatically chosen) recognition engine."""
    notion = Notion(notion)
    if given_axis is not None:
        return axis_check.check_on_axis(profile, given_axis, notion)
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    cls = profile.order_class()

    if notion != Notion.PSP:
        if algorithm == "oracle":
            return oracle.oracle_recognize(profile, notion, bound=oracle_bound)
        if algorithm in ("auto", "c1p"):
            return {
                Notion.PLATEAUED: c1p.recognize_plateaued,
                Notion.BLACK: c1p.recognize_black,
                Notion.NECESSARY: c1p.recognize_necessary,
            }[notion](profile)
        raise ClassError(
            f"the {algorithm} engine only decides possibly-single-peakedness"
        )

    if algorithm == "c1p":
        return c1p.recognize_psp_c1p(profile)
    if algorithm == "guided":
        guiding = _guiding_vote(profile)
        if guiding is None:
            raise NoTotalOrderError("no explicit or implicit guiding vote found")
        return guided_recognize(profile, guiding)
    if algorithm == "unguided":
        return unguided.unguided_recognize(profile)
    if algorithm == "twosat":
        return twosat.recognize_lwo_with_total(profile)
    if algorithm == "oracle":
        return oracle.oracle_recognize(profile, Notion.PSP, bound=oracle_bound)

    # auto
    if cls <= OrderClass.TOP:
        guiding = _guiding_vote(profile)
        if guiding is not None:
            return guided_recognize(profile, guiding)
        return unguided.unguided_recognize(profile)
    if cls == OrderClass.WEAK:
        guiding = _guiding_vote(profile)
        if guiding is not None:
            return guided_recognize(profile, guiding)
        return c1p.recognize_psp_c1p(profile)
    if cls == OrderClass.LOCAL_WEAK and profile.contains_total_order():
        return twosat.recognize_lwo_with_total(profile)
    if profile.m <= oracle_bound:
        return oracle.oracle_recognize(profile, Notion.PSP, bound=oracle_bound)
    raise HardnessError(
        "recognition for this order class is NP-complete and the instance "
        f"exceeds the brute-force bound (m={profile.m} > {oracle_bound})"
    )


def applicable_engines(profile, notion=Notion.PSP, oracle_bound=oracle.DEFAULT_BOUND):
    """(name, runner) pairs of every engine whose preconditions hold."""
    notion = Notion(notion)
    cls = profile.order_class()
    engines = []
    if notion == Notion.PSP:
        if cls <= OrderClass.WEAK:
            engines.append(("c1p", c1p.recognize_psp_c1p))
            guiding = _guiding_vote(profile)
            if guiding is not None:
                engines.append(
                    ("guided", lambda p, g=guiding: guided_recognize(p, g))
                )
        if cls <= OrderClass.TOP:
            engines.append(("unguided", unguided.unguided_recognize))
        if cls <= OrderClass.LOCAL_WEAK and profile.contains_total_order():
            engines.append(("twosat", twosat.recognize_lwo_with_total))
        if profile.m <= oracle_bound:
            engines.append(
                ("oracle", lambda p: oracle.oracle_recognize(p, Notion.PSP, oracle_bound))
            )
    else:
        if cls <= OrderClass.WEAK:
            runner = {
                Notion.PLATEAUED: c1p.recognize_plateaued,
                Notion.BLACK: c1p.recognize_black,
                Notion.NECESSARY: c1p.recognize_necessary,
            }[notion]
            engines.append(("c1p", runner))
            if profile.m <= oracle_bound and not (
                notion == Notion.NECESSARY and profile.m > 6
            ):
                engines.append(
                    ("oracle", lambda p, nt=notion: oracle.oracle_recognize(p, nt, oracle_bound))
                )
    return engines


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def _read_axis(path, names):
    text = open(path).read().strip()
    labels = [t for t in text.replace(",", " ").split() if t]
    index = {name: i for i, name in enumerate(names)}
    order = []
    for label in labels:
        if label in index:
            order.append(index[label])
        elif label.isdigit() and 1 <= int(label) <= len(names):
            order.append(int(label) - 1)
        else:
            raise PeakcheckError(f"unknown candidate {label!r} in axis file")
    return Axis(tuple(order))


def _seed_corpus_profiles(spec):
    """Profiles from 'm,n,class,seed[,count]' (class: soc/toc/toi or order class)."""
    parts = spec.split(",")
    if len(parts) not in (4, 5):
        raise PeakcheckError("--seed-corpus expects m,n,class,seed[,count]")
    m, n = int(parts[0]), int(parts[1])
    cls_name = parts[2].strip().lower()
    seed = int(parts[3])
    count = int(parts[4]) if len(parts) == 5 else 1
    classes = {
        "total": OrderClass.TOTAL, "soc": OrderClass.TOTAL,
        "top": OrderClass.TOP, "toi": OrderClass.TOP, "soi": OrderClass.TOP,
        "weak": OrderClass.WEAK, "toc": OrderClass.WEAK,
        "localweak": OrderClass.LOCAL_WEAK, "partial": OrderClass.PARTIAL,
    }
    if cls_name not in classes:
        raise PeakcheckError(f"unknown class {cls_name!r}")
    for i in range(count):
        yield (
            f"seed-corpus[{i}]",
            gadgets.random_profile(m, n, classes[cls_name], seed + i),
            [str(c + 1) for c in range(m)],
        )


def _run_one(profile, names, args):
    t0 = time.perf_counter()
    axis = _read_axis(args.axis, names) if args.axis else None
    if args.cross_validate and axis is None:
        results = [
            (name, runner(profile))
            for name, runner in applicable_engines(
                profile, args.notion, args.oracle_bound
            )
        ]
        if not results:
            raise HardnessError("no engine applies to this profile")
        bits = {v.consistent for _, v in results}
        if len(bits) != 1:
            detail = ", ".join(f"{n}={v.consistent}" for n, v in results)
            raise PeakcheckError(f"engines disagree: {detail}")
        verdict = results[0][1]
        engines_used = "+".join(n for n, _ in results)
        verdict = Verdict(
            verdict.consistent, verdict.axis, verdict.certificate,
            verdict.notion, engines_used,
        )
    else:
        verdict = dispatch(
            profile, args.notion, args.algorithm, axis, args.oracle_bound
        )
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    stats = {
        "m": profile.m,
        "n": profile.n,
        "total_voters": profile.total_voters,
        "wall_time_ms": round(elapsed_ms, 3),
    }
    return verdict, stats


def _print_result(source, verdict, stats, names, as_json, out=None):
    out = out if out is not None else sys.stdout
    if as_json:
        out.write(preflib.write_verdict_json(verdict, stats, names))
        return
    status = "consistent" if verdict.consistent else "not consistent"
    out.write(f"{source}: {status} [{verdict.notion.value}/{verdict.algorithm}]")
    if verdict.axis is not None:
        labels = [names[c] if c < len(names) else str(c + 1) for c in verdict.axis]
        out.write("  axis: " + " > ".join(labels))
    elif verdict.certificate is not None:
        out.write(f"  certificate: {verdict.certificate}")
    out.write(f"  ({stats['wall_time_ms']:.1f} ms)\n")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="peakcheck",
        description="Decide whether incomplete preference profiles are "
        "possibly single-peaked (and variants).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recognize", help="recognise one or more election files")
    rec.add_argument("files", nargs="*", help="PrefLib (soc/soi/toc/toi) or JSON profiles")
    rec.add_argument(
        "--notion",
        choices=[n.value for n in Notion],
        default="psp",
    )
    rec.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    rec.add_argument("--axis", help="file with a candidate order to verify against")
    rec.add_argument("--json", action="store_true", help="machine-readable output")
    rec.add_argument(
        "--cross-validate",
        action="store_true",
        help="run every applicable engine and require agreement",
    )
    rec.add_argument(
        "--seed-corpus",
        metavar="M,N,CLASS,SEED[,COUNT]",
        help="recognise generated profiles instead of files",
    )
    rec.add_argument("--oracle-bound", type=int, default=oracle.DEFAULT_BOUND)

    gen = sub.add_parser("generate", help="write a reproducible corpus")
    gen.add_argument("out", help="output file")
    gen.add_argument("--kind", choices=["sp", "random"], default="sp")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--notion", choices=[n.value for n in Notion], default="psp")
    gen.add_argument("--class", dest="order_class", default="weak")
    gen.add_argument("--incompleteness", type=float, default=0.3)
    gen.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        return _cmd_recognize(args)
    except PeakcheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cmd_generate(args):
    if args.kind == "sp":
        profile = gadgets.random_sp_profile(
            args.m, args.n, args.notion, args.incompleteness, args.seed
        )
    else:
        cls = {
            "total": OrderClass.TOTAL,
            "top": OrderClass.TOP,
            "weak": OrderClass.WEAK,
            "localweak": OrderClass.LOCAL_WEAK,
            "partial": OrderClass.PARTIAL,
        }[args.order_class]
        profile = gadgets.random_profile(args.m, args.n, cls, args.seed)
    comments = [
        f"GENERATOR: peakcheck {args.kind} m={args.m} n={args.n} "
        f"notion={args.notion} incompleteness={args.incompleteness} "
        f"seed={args.seed} rng={gadgets.RNG_ID}"
    ]
    if profile.order_class() <= OrderClass.WEAK:
        text = preflib.write_preflib(profile, comments=comments)
    else:
        text = preflib.write_profile_json(profile)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {args.out} (m={profile.m}, n={profile.n})")
    return 0


def _cmd_recognize(args):
    args.notion = Notion(args.notion)
    jobs = []
    if args.seed_corpus:
        jobs.extend(_seed_corpus_profiles(args.seed_corpus))
    for path in args.files:
        text = open(path).read()
        profile, names = preflib.parse_any(text)
        jobs.append((path, profile, names))
    if not jobs:
        print("error: no input files (or --seed-corpus) given", file=sys.stderr)
        return 2
    if len(jobs) > 1:
        # recognition is pure, so files can be processed concurrently;
        # results are printed in input order
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=min(4, len(jobs))) as pool:
            futures = [
                pool.submit(_run_one, profile, names, args)
                for _, profile, names in jobs
            ]
            results = [f.result() for f in futures]
    else:
        results = [_run_one(jobs[0][1], jobs[0][2], args)]
    worst = 0
    for (source, _, names), (verdict, stats) in zip(jobs, results):
        _print_result(source, verdict, stats, names, args.json)
        worst = max(worst, 0 if verdict.consistent else 1)
    return worst


if __name__ == "__main__":
    sys.exit(main())
