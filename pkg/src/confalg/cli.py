"""Command line front end.

Subcommands: reduce, prod, basis, table, check, demo.  Results go to
stdout, diagnostics to stderr.  Exit codes: 0 success, 1 parse or config
error, 2 reduction outside the normal-word span, 3 axiom violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exprs import ENGINES, ParseError, evaluate, evaluate_pseudo, parse
from .freeconf import (
    ConfElement,
    FreeConformal,
    NotInSpan,
    random_element,
)
from .ncpoly import AlgebraConfig, ConfigError, NCPoly, deglex_key
from .pseudo import (
    COACTIONS,
    PElement,
    ProductKind,
    PseudoAlgebra,
    as_rng,
    associator_identity,
    commutativity_identity,
    current_coaction,
    random_pelement,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_IN_SPAN = 2
EXIT_AXIOM = 3

MODES = ("conformal", "pseudo-commutative")
AXIOMS = ("assoc", "sesqui", "locality", "pseudo-assoc", "identity")


class UsageError(Exception):
    """Bad flags, config files, or input shapes; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own errors; that code is taken
    def error(self, message):
        raise UsageError(message)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def load_config(path: str) -> tuple[AlgebraConfig, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    mode = raw.get("mode", "conformal")
    if mode not in MODES:
        raise UsageError(f"unknown mode: {mode!r}")
    gens = raw.get("generators")
    if not isinstance(gens, list) or not gens:
        raise UsageError("config needs a nonempty generators list")
    localities: dict[str, int] = {}
    for item in gens:
        if not isinstance(item, dict) or "name" not in item or "locality" not in item:
            raise UsageError("each generator entry needs name and locality")
        name = item["name"]
        if not isinstance(name, str):
            raise UsageError("generator names must be strings")
        if name in localities:
            raise UsageError(f"duplicate generator: {name!r}")
        localities[name] = item["locality"]
    order = raw.get("order")
    if order is not None and not (
        isinstance(order, list) and all(isinstance(x, str) for x in order)
    ):
        raise UsageError("order must be a list of generator names")
    try:
        alg = AlgebraConfig(
            localities, order=order, commutative=(mode == "pseudo-commutative")
        )
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    return alg, mode


def _require_conformal(mode: str, what: str) -> None:
    if mode != "conformal":
        raise UsageError(
            f"{what} needs mode \"conformal\"; the commutative construction "
            "has no normal-word basis"
        )


def pelement_to_json(alg: AlgebraConfig, p: PElement) -> list:
    out = []
    for d in sorted(p.parts):
        f = p.parts[d]
        words = sorted(f.terms.items(), key=lambda kv: deglex_key(kv[0]))
        out.append(
            {
                "d": d,
                "terms": [
                    {"coeff": str(c), "word": list(alg.word_names(w))}
                    for w, c in words
                ],
            }
        )
    return out


def pelement_from_json(alg: AlgebraConfig, raw) -> PElement:
    if not isinstance(raw, dict) or not isinstance(raw.get("parts"), list):
        raise UsageError('raw element must be {"parts": [{"d": ..., "terms": [...]}]}')
    parts: dict[int, NCPoly] = {}
    try:
        for part in raw["parts"]:
            d = int(part["d"])
            terms: dict[tuple, Fraction] = {}
            for t in part["terms"]:
                w = alg.word(tuple(t["word"]))
                terms[w] = terms.get(w, Fraction(0)) + Fraction(t["coeff"])
            poly = NCPoly(alg, terms)
            parts[d] = parts[d] + poly if d in parts else poly
        return PElement(alg, parts)
    except (KeyError, TypeError, ValueError, ZeroDivisionError, ConfigError) as exc:
        raise UsageError(f"bad raw element: {exc}") from exc


def _print_element(fc: FreeConformal, x: ConfElement) -> None:
    print(fc.element_to_text(x))
    print(dump_json(fc.element_to_json(x)))


def _print_pelement(alg: AlgebraConfig, p: PElement) -> None:
    print(repr(p))
    print(dump_json(pelement_to_json(alg, p)))


def cmd_reduce(args) -> int:
    alg, mode = load_config(args.config)
    _require_conformal(mode, "reduce")
    fc = FreeConformal(alg)
    if (args.expr is None) == (args.raw_element is None):
        raise UsageError("reduce needs exactly one of --expr or --raw-element")
    if args.expr is not None:
        x = evaluate(fc, parse(args.expr), engine=args.engine)
    else:
        try:
            with open(args.raw_element, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read raw element: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"raw element is not valid JSON: {exc}") from exc
        x = fc.reduce(pelement_from_json(alg, raw))
    _print_element(fc, x)
    return EXIT_OK


def cmd_prod(args) -> int:
    alg, mode = load_config(args.config)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    if mode == "conformal":
        fc = FreeConformal(alg)
        left = evaluate(fc, parse(args.left), engine=args.engine)
        right = evaluate(fc, parse(args.right), engine=args.engine)
        prod = fc.cprod if args.engine == "realize" else fc.cprod_rw
        _print_element(fc, prod(left, args.n, right))
    else:
        pa = PseudoAlgebra(alg)
        left = evaluate_pseudo(pa, parse(args.left))
        right = evaluate_pseudo(pa, parse(args.right))
        _print_pelement(alg, pa.nth(ProductKind.P20, left, args.n, right))
    return EXIT_OK


def cmd_basis(args) -> int:
    alg, mode = load_config(args.config)
    _require_conformal(mode, "basis")
    if args.max_k < 0 or args.max_s < 0:
        raise UsageError("--max-k and --max-s must be nonnegative")
    fc = FreeConformal(alg)
    words = fc.enumerate_basis(args.max_k, args.max_s)
    counts = []
    for k in range(args.max_k + 1):
        dfree = sum(1 for u in words if u.s == 0 and len(u.indices) == k)
        expected = fc.basis_count(k)
        if dfree != expected:
            raise RuntimeError(f"enumeration mismatch at k={k}: {dfree} != {expected}")
        counts.append({"k": k, "dfree": dfree})
        print(f"k={k}: {dfree} D-free normal words")
    words = sorted(words, key=fc.sort_key)
    print(dump_json({"counts": counts, "total": len(words), "words": [fc.word_to_json(u) for u in words]}))
    return EXIT_OK


def cmd_table(args) -> int:
    alg, mode = load_config(args.config)
    _require_conformal(mode, "table")
    if args.max_n < 0 or args.max_k < 0:
        raise UsageError("--max-n and --max-k must be nonnegative")
    fc = FreeConformal(alg)
    prod = fc.cprod if args.engine == "realize" else fc.cprod_rw
    words = sorted(fc.enumerate_basis(args.max_k, 0), key=fc.sort_key)
    rows = []
    for u in words:
        xu = ConfElement.single(u)
        for n in range(args.max_n + 1):
            for w in words:
                value = prod(xu, n, ConfElement.single(w))
                rows.append(
                    {
                        "left": fc.word_to_json(u),
                        "n": n,
                        "right": fc.word_to_json(w),
                        "value": fc.element_to_json(value),
                    }
                )
    print(dump_json(rows))
    return EXIT_OK


def _check_fail(axiom: str, detail: str) -> int:
    print(f"axiom {axiom}: FAIL {detail}")
    return EXIT_AXIOM


def cmd_check(args) -> int:
    alg, mode = load_config(args.config)
    axiom = args.axiom
    trials = args.trials
    if trials < 1:
        raise UsageError("--trials must be positive")
    coaction = COACTIONS[args.coaction]
    pseudo_axioms = ("pseudo-assoc", "identity")
    if args.coaction != "standard" and axiom not in pseudo_axioms:
        raise UsageError("--coaction only affects pseudo-assoc and identity")
    if mode != "conformal" and axiom not in pseudo_axioms:
        raise UsageError(f"axiom {axiom} needs mode \"conformal\"")
    rng = as_rng(args.seed)

    if axiom in ("assoc", "sesqui", "locality"):
        fc = FreeConformal(alg)
        top = 2 * alg.max_n()
        for t in range(trials):
            x = random_element(rng, fc, max_k=1, max_s=1)
            y = random_element(rng, fc, max_k=1, max_s=1)
            if axiom == "assoc":
                z = random_element(rng, fc, max_k=1, max_s=1)
                n, m = rng.randint(0, top), rng.randint(0, top)
                defect = fc.associativity_defect(x, n, y, m, z)
                if defect:
                    return _check_fail(
                        axiom,
                        f"(trial {t}): n={n} m={m} x={x!r} y={y!r} z={z!r} defect={defect!r}",
                    )
            elif axiom == "sesqui":
                n = rng.randint(0, top)
                lhs = fc.cprod(x.d_shift(1), n, y)
                rhs = fc.cprod(x, n - 1, y).scale(-n) if n >= 1 else ConfElement()
                if lhs != rhs:
                    return _check_fail(axiom, f"(trial {t}): left slot, n={n} x={x!r} y={y!r}")
                lhs = fc.cprod(x, n, y.d_shift(1))
                rhs = fc.cprod(x, n, y).d_shift(1)
                if n >= 1:
                    rhs = rhs + fc.cprod(x, n - 1, y).scale(n)
                if lhs != rhs:
                    return _check_fail(axiom, f"(trial {t}): right slot, n={n} x={x!r} y={y!r}")
            else:
                bound = fc.locality_of(x, y)
                for extra in range(3):
                    if fc.cprod(x, bound + extra, y):
                        return _check_fail(
                            axiom, f"(trial {t}): nonzero above N={bound}, x={x!r} y={y!r}"
                        )
                if bound > 0 and not fc.cprod(x, bound - 1, y):
                    return _check_fail(
                        axiom, f"(trial {t}): N={bound} not minimal, x={x!r} y={y!r}"
                    )
        print(f"axiom {axiom}: PASS ({trials} trials, seed {args.seed})")
        return EXIT_OK

    pa = PseudoAlgebra(alg, coaction)
    if axiom == "pseudo-assoc":
        kinds = (
            (ProductKind.P10, ProductKind.P20)
            if alg.commutative
            else (ProductKind.P8, ProductKind.P9, ProductKind.P11)
        )
        for kind in kinds:
            for t in range(trials):
                x = random_pelement(rng, alg, max_d=2, max_len=3)
                y = random_pelement(rng, alg, max_d=2, max_len=3)
                z = random_pelement(rng, alg, max_d=2, max_len=3)
                if not pa.assoc_check(kind, x, y, z):
                    return _check_fail(
                        axiom,
                        f"(kind {kind.value}, trial {t}): x={x!r} y={y!r} z={z!r}",
                    )
        names = ",".join(k.value for k in kinds)
        print(f"axiom {axiom}: PASS (kinds {names}, {trials} trials each, seed {args.seed})")
        return EXIT_OK

    # identity
    if alg.commutative:
        checks = (
            ("commutativity", commutativity_identity(), ProductKind.P20, 2),
            ("associator", associator_identity(), ProductKind.P20, 3),
        )
    else:
        checks = (("associator", associator_identity(), ProductKind.P8, 3),)
    for name, terms, kind, arity in checks:
        for t in range(trials):
            points = [random_pelement(rng, alg, max_d=2, max_len=3) for _ in range(arity)]
            value = pa.eval_identity(terms, kind, points)
            if value:
                return _check_fail(
                    axiom,
                    f"({name} under {kind.value}, trial {t}): args={points!r} value={value!r}",
                )
    names = ",".join(c[0] for c in checks)
    print(f"axiom identity: PASS ({names}, {trials} trials each, seed {args.seed})")
    return EXIT_OK


def cmd_demo(args) -> int:
    which = args.which
    if which == "current":
        alg = AlgebraConfig({"a": 1, "b": 1})
        pa = PseudoAlgebra(alg, current_coaction)
        xa = PElement.from_poly(alg, alg.monomial(("a",)))
        xb = PElement.from_poly(alg, alg.monomial(("b",)))
        print("current: trivial coaction, the 0-th product is the algebra product")
        for n in range(2):
            print(f"current: (1(x)a) .{n} (1(x)b) = {pa.nth(ProductKind.P8, xa, n, xb)!r}")
        return EXIT_OK
    alg = AlgebraConfig({"a": 1})  # only the letter v is used below
    pa = PseudoAlgebra(alg)
    if which == "weyl":
        x = PElement.from_poly(alg, alg.monomial(("v",)))
        print(f"weyl: x = {x!r}")
        for n in range(3):
            print(f"weyl: x .{n} x = {pa.nth(ProductKind.P8, x, n, x)!r}")
        return EXIT_OK
    L = PElement.from_poly(alg, alg.monomial(("v",), -1))
    print(f"virasoro: L = {L!r}")
    for n in range(4):
        print(f"virasoro: [L .{n} L] = {pa.comm_nth(L, n, L)!r}")
    print(f"virasoro: D L = {L.d_shift(1)!r}")
    print(f"virasoro: 2 L = {L.scale(2)!r}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="confalg",
        description=(
            "Exact computations in free associative conformal algebras. "
            "The infix product (x .n y) stands for the n-th conformal "
            "product of x and y; D^k(x) applies the derivation k times."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="evaluate an expression to its normal form")
    p.add_argument("--config", required=True)
    p.add_argument("--expr")
    p.add_argument("--raw-element", help="JSON file with an H (x) F(B) element to reduce")
    p.add_argument("--engine", choices=ENGINES, default="realize")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("prod", help="n-th product of two expressions")
    p.add_argument("--config", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--engine", choices=ENGINES, default="realize")
    p.set_defaults(func=cmd_prod)

    p = sub.add_parser("basis", help="enumerate normal words and count them")
    p.add_argument("--config", required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--max-s", type=int, default=0)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("table", help="structure constants for enumerated words")
    p.add_argument("--config", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="realize")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", help="randomized axiom checks")
    p.add_argument("--config", required=True)
    p.add_argument("--axiom", choices=AXIOMS, required=True)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coaction", choices=sorted(COACTIONS), default="standard")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", help="worked examples: current, weyl, virasoro")
    p.add_argument("which", choices=("current", "weyl", "virasoro"))
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInSpan as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_SPAN


if __name__ == "__main__":
    sys.exit(main())
