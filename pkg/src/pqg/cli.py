"""Command line interface: ``pqg <command> ...``.

Every command prints deterministic output and exits with status 0 when all of
its verifications pass, 1 otherwise. Failures print a JSON record
``{"ok": false, "command": ..., "error": ..., "message": ...}``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path

from . import categories as cat
from . import fusion, reps, tensor_maps
from .errors import PartitionError
from .groups import named_group
from .partitions import ColouredPartition, ColourSet, enumerate_partitions

PREDICATE_FLAGS = {"all": "all", "nc": "noncrossing", "pair": "pair", "nc_pair": "noncrossing-pair"}


class CommandFailed(Exception):
    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), sort_keys=False)


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _parse_word(text: str) -> tuple[str, ...]:
    """'-' or '' is the empty word; commas separate multi-character colours; else one colour per character."""
    if text in ("", "-"):
        return ()
    if "," in text:
        return tuple(c for c in text.split(",") if c)
    return tuple(text)


def _category(args) -> cat.Category:
    if getattr(args, "category", None):
        return cat.category_from_descriptor(_load_json(args.category))
    tag = args.builtin
    if tag is None:
        raise CommandFailed("a category is required: --builtin TAG or --category FILE")
    key = tag.upper()
    if key == "C_GAMMA0":
        return cat.builtin(tag, named_group(args.group or "Z2"))
    if key == "C_S_AB":
        return cat.builtin(tag, args.s)
    if key == "C_S":
        if not args.fusion_set:
            raise CommandFailed("C_S needs --fusion-set FILE")
        return fusion.build_CS(fusion.FusionSet.from_json(_load_json(args.fusion_set)))
    return cat.builtin(tag)


# -- commands -----------------------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    kinds = [k for k in PREDICATE_FLAGS if getattr(args, k)]
    predicate = PREDICATE_FLAGS[kinds[0]] if kinds else "all"
    parts = list(enumerate_partitions(args.k, args.l, predicate, limit=max(args.k + args.l, 1)))
    if args.format == "json":
        print(_dump({"kind": predicate, "k": args.k, "l": args.l, "count": len(parts), "partitions": [p.to_json() for p in parts]}))
    else:
        for p in parts:
            print(p.text())
    return 0


def cmd_tp_verify(args) -> int:
    parts = [p for k in range(args.maxpoints + 1) for l in range(args.maxpoints + 1) for p in enumerate_partitions(k, l, "all")]
    dims = args.dim or [1, 2, 3]
    records = []
    ok = True
    if args.samples:
        rng = random.Random(args.seed)
        for N in dims:
            violations = []
            for _ in range(args.samples):
                p, q = rng.choice(parts), rng.choice(parts)
                report = tensor_maps.verify_functor(p, q, N)
                if not report.ok:
                    violations.append({"p": p.text(), "q": q.text(), "failure": report.failure})
            ok &= not violations
            records.append({"N": N, "samples": args.samples, "violations": violations})
    else:
        for N in dims:
            report = tensor_maps.check_functor_laws(parts, N)
            ok &= report.ok
            records.append(
                {
                    "N": N,
                    "partitions": report.partitions,
                    "adjoint": report.adjoint_checks,
                    "tensor": report.tensor_checks,
                    "composition": report.composition_checks,
                    "violations": [str(v) for v in report.violations],
                }
            )
    out = {"ok": ok, "maxpoints": args.maxpoints, "results": records}
    if args.format == "json":
        print(_dump(out))
    else:
        for r in records:
            print(f"N={r['N']}: {len(r['violations'])} violations")
    return 0 if ok else 1


def cmd_gram(args) -> int:
    c = _category(args)
    upper, lower = _parse_word(args.upper), _parse_word(args.lower)
    parts = c.members(upper, lower)
    rank = tensor_maps.gram_rank(parts, args.dim) if parts else 0
    out = {"ok": rank == len(parts), "partitions": len(parts), "rank": rank, "N": args.dim}
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"{len(parts)} partitions, Gram rank {rank} at N={args.dim}")
    return 0 if out["ok"] else 1


def _fusion_source(args):
    if args.fusion_set and not args.builtin:
        return fusion.FusionSet.from_json(_load_json(args.fusion_set)), None
    c = _category(args)
    s, index = reps.one_block_fusion_set(c, args.bound)
    return s, (c, index)


def cmd_fusion_table(args) -> int:
    s, source = _fusion_source(args)
    letters = list(s.elements[: args.letters] if args.letters else s.elements)
    joiner = "" if all(len(x) == 1 for x in letters) else "."
    words = [w for n in range(1, args.maxlen + 1) for w in itertools.product(letters, repeat=n)]
    rows, mismatches = [], []
    labeller = None
    if source is not None and args.check:
        labeller = reps.Labeller(source[0], args.bound)
        labeller.classes = source[1]
    for v, w in itertools.product(words, repeat=2):
        terms = fusion.word_tensor(v, w, s)
        rows.append({"left": list(v), "right": list(w), "terms": [[list(u), m] for u, m in sorted(terms.items(), key=lambda t: (-len(t[0]), t[0]))], "text": reps.format_fusion_row(v, w, terms, joiner)})
        if labeller is not None:
            c, index = source
            got = reps.fuse_noncrossing(reps.word_partition(index, v), reps.word_partition(index, w), c, labeller).words()
            if got != terms:
                mismatches.append(rows[-1]["text"])
    ok = not mismatches
    if args.format == "json":
        print(_dump({"ok": ok, "fusion_set": s.to_json(), "rows": rows, "mismatches": mismatches}))
    else:
        for r in rows:
            print(r["text"])
        for m in mismatches:
            print(f"mismatch: {m}")
    return 0 if ok else 1


def cmd_classify(args) -> int:
    s = fusion.FusionSet.from_json(_load_json(args.file))
    triple = fusion.classify(s)
    print(_dump(triple.to_json()))
    return 0


def cmd_realize(args) -> int:
    triple = fusion.FusionTriple.from_json(_load_json(args.file))
    s = fusion.realize(triple)
    print(_dump(s.to_json()))
    return 0


def cmd_appendix(args) -> int:
    s = fusion.FusionSet.from_json(_load_json(args.file))
    report = fusion.appendix_check(s, args.beta, args.gamma, args.maxlen)
    out = {
        "ok": report.ok,
        "beta": report.beta,
        "gamma": report.gamma,
        "L": report.max_len,
        "eq_main": report.eq_main,
        "D_E_partition": report.partition_ok,
        "F_circ_D_disjoint_from_D": report.f_circ_d_disjoint,
        "r_circ_E_pairwise_disjoint": report.r_circ_e_disjoint,
        "r_words": [list(w) for w in report.r_words],
        "truncated": report.truncated,
        "sizes": report.sizes,
    }
    if args.format == "json":
        print(_dump(out))
    else:
        for key in ("eq_main", "D_E_partition", "F_circ_D_disjoint_from_D", "r_circ_E_pairwise_disjoint"):
            print(f"{key}: {'pass' if out[key] else 'FAIL'}")
    return 0 if report.ok else 1


def cmd_closure(args) -> int:
    data = _load_json(args.file)
    if isinstance(data, dict):
        gens_raw = data.get("generators", [])
        colours = ColourSet.from_mapping(data["colours"]) if data.get("colours") else None
    else:
        gens_raw, colours = data, None
    gens = [ColouredPartition.parse(g) if isinstance(g, str) else ColouredPartition.from_json(g) for g in gens_raw]
    c = cat.closure(gens, args.bound, args.slack, colours)
    members = [p for n in range(args.bound + 1) for p in c.lower_members(n)]
    counts = [sum(1 for p in members if p.l == n) for n in range(args.bound + 1)]
    if args.format == "json":
        print(_dump({"bound": args.bound, "counts": counts, "partitions": [p.to_json() for p in members]}))
    else:
        for p in members:
            print(p.text())
    return 0


# -- parser ---------------------------------------------------------------------------------------------------


def _add_category_flags(p: argparse.ArgumentParser):
    p.add_argument("--builtin", help="ALL, NC, NC2, C_gamma0, C_s_ab or C_S")
    p.add_argument("--category", help="category descriptor JSON file")
    p.add_argument("--group", help="group name for C_gamma0, e.g. Z2")
    p.add_argument("--s", type=int, default=2, help="modulus for C_s_ab")
    p.add_argument("--fusion-set", help="fusion set JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqg", description="Partitions, partition categories and fusion sets.")
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(func=func)
        # accept the global flags after the subcommand as well
        p.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return p

    p = add("enumerate", cmd_enumerate, help="list partitions of a given type")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--nc", action="store_true")
    group.add_argument("--pair", action="store_true")
    group.add_argument("--nc-pair", dest="nc_pair", action="store_true")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)

    p = add("tp-verify", cmd_tp_verify, help="check the functor laws of p -> T_p")
    p.add_argument("--maxpoints", type=int, default=3, help="points per row")
    p.add_argument("--dim", type=int, action="append", help="N values (repeatable, default 1 2 3)")
    p.add_argument("--samples", type=int, default=0, help="random pairs per N instead of all pairs")

    p = add("gram", cmd_gram, help="Gram rank of a category's partitions between two words")
    _add_category_flags(p)
    p.add_argument("upper", help="upper word, '-' for empty")
    p.add_argument("lower", help="lower word, '-' for empty")
    p.add_argument("--dim", type=int, default=4)

    p = add("fusion-table", cmd_fusion_table, help="products of words in a free fusion semiring")
    _add_category_flags(p)
    p.add_argument("--letters", type=int, default=0, help="use only the first n letters")
    p.add_argument("--maxlen", type=int, default=2)
    p.add_argument("--bound", type=int, default=8, help="points allowed for one-block projectives")
    p.add_argument("--check", action="store_true", help="compare with the partition-side fusion rules")

    p = add("classify", cmd_classify, help="fusion triple of an admissible fusion set")
    p.add_argument("file")

    p = add("realize", cmd_realize, help="fusion set of a fusion triple")
    p.add_argument("file")

    p = add("appendix", cmd_appendix, help="word-set checks for a fusion set")
    p.add_argument("file")
    p.add_argument("--beta")
    p.add_argument("--gamma")
    p.add_argument("--maxlen", type=int, default=6)

    p = add("closure", cmd_closure, help="category generated by partitions, up to a bound")
    p.add_argument("file", help="JSON list of partitions, or {generators, colours}")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--slack", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PartitionError, CommandFailed, ValueError, KeyError, OSError) as exc:
        record = {"ok": False, "command": args.command, "error": type(exc).__name__, "message": str(exc)}
        print(_dump(record))
        return 1


if __name__ == "__main__":
    sys.exit(main())
