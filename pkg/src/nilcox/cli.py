"""Command-line interface: ``nilcox <subcommand> [flags]``.

Exit codes: 0 success, 1 domain error (bad input, invalid matrix, context
mismatch, failed check), 2 resource error (oracle word budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from nilcox import nca
from nilcox.classifier import classify
from nilcox.nca import AlgebraElement, ContextMismatch, algebra
from nilcox.oracle import ResourceBudgetError, graded_report
from nilcox.presentations import GeneralizedCoxeterMatrix, InvalidMatrixError, type_a_matrix
from nilcox.witness import NoWitnessError, WitnessViolation, build_witness, verify_witness


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _letters(text: str) -> list[int]:
    text = text.strip().strip("[]")
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot read word {text!r}; expected comma-separated integers") from None


def _need_context(args):
    if args.n is None or args.d is None:
        raise UsageError(f"{args.command} needs --n and --d")
    return algebra(args.n, args.d)


def _element_or_word(A, text: str) -> AlgebraElement:
    if "[" in text or text.strip() == "0":
        return A.parse(text)
    return A.normal_form(_letters(text))


def _element_json(x: AlgebraElement) -> dict:
    return {"element": x.to_text(),
            "terms": [{"coefficient": c, "word": b.expand()} for b, c in x.sorted_terms()]}


def _matrix(args) -> GeneralizedCoxeterMatrix:
    if args.matrix:
        try:
            return GeneralizedCoxeterMatrix.load(args.matrix)
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
            raise UsageError(f"cannot read matrix file {args.matrix}: {e}") from None
    if args.n is not None and args.d is not None:
        return type_a_matrix(args.n, [2] * (args.n - 1) + [args.d])
    raise UsageError(f"{args.command} needs --matrix or --n/--d")


def _emit(args, text: str, payload: dict):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------------

def cmd_dim(args):
    _need_context(args)
    v = nca.dimension(args.n, args.d)
    _emit(args, str(v), {"dimension": v})


def cmd_hilbert(args):
    _need_context(args)
    h = nca.hilbert(args.n, args.d)
    _emit(args, ",".join(map(str, h)), {"coefficients": h})


def cmd_basis(args):
    A = _need_context(args)
    words = [b.expand() for b in A.basis]
    _emit(args, "\n".join(f"[{','.join(map(str, w))}]" for w in words), {"basis": words})


def cmd_nf(args):
    A = _need_context(args)
    if args.word is None:
        raise UsageError("nf needs --word")
    x = A.normal_form(_letters(args.word))
    _emit(args, x.to_text(), _element_json(x))


def cmd_mul(args):
    A = _need_context(args)
    if args.lhs is None or args.rhs is None:
        raise UsageError("mul needs --lhs and --rhs")
    x = A.multiply(_element_or_word(A, args.lhs), _element_or_word(A, args.rhs))
    _emit(args, x.to_text(), _element_json(x))


def cmd_length(args):
    A = _need_context(args)
    if args.word is None:
        raise UsageError("length needs --word")
    x = A.normal_form(_letters(args.word))
    if x.is_zero():
        raise UsageError("the word is zero in the algebra, so it has no length")
    (b,) = x.terms
    _emit(args, str(b.length()), {"length": b.length(), "word": b.expand()})


def cmd_theta(args):
    A = _need_context(args)
    if args.word is None:
        raise UsageError("theta needs --word (letters or an element such as '2*[1,2]')")
    x = A.theta(_element_or_word(A, args.word))
    _emit(args, x.to_text(), _element_json(x))


def cmd_primitives(args):
    A = _need_context(args)
    left = [b.expand() for b in A.left_primitives()]
    both = [b.expand() for b in A.two_sided_primitives()]
    fmt = lambda ws: " ".join(f"[{','.join(map(str, w))}]" for w in ws)
    _emit(args, f"left ({len(left)}): {fmt(left)}\ntwo-sided ({len(both)}): {fmt(both)}",
          {"left": left, "two_sided": both})


def cmd_frobenius(args):
    _need_context(args)
    v = nca.is_frobenius(args.n, args.d)
    _emit(args, "true" if v else "false", {"frobenius": v})


def cmd_khovanov(args):
    A = _need_context(args)
    r = A.khovanov_decomposition_check()
    lines = [f"plain rank: {r.plain_rank}"]
    lines += [f"M_{k} rank: {v} (expected {r.expected_block_rank})" for k, v in sorted(r.extended_ranks.items())]
    lines += [f"surjectivity failures: {len(r.surjectivity_failures)}",
              f"total: {r.total} = dimension {r.dimension}: {'ok' if r.ok else 'FAIL'}"]
    _emit(args, "\n".join(lines), {
        "plain_rank": r.plain_rank, "extended_ranks": {str(k): v for k, v in r.extended_ranks.items()},
        "expected_block_rank": r.expected_block_rank,
        "surjectivity_failures": [b.expand() for b in r.surjectivity_failures],
        "total": r.total, "dimension": r.dimension, "ok": r.ok})
    if not r.ok:
        raise CheckFailed("bimodule decomposition check failed")


def cmd_classify(args):
    r = classify(_matrix(args))
    text = f"finite {r.dimension} ({r.family})" if r.finite else f"infinite {r.case}"
    _emit(args, text, r.to_json_dict())


def _witness_for(args):
    M = _matrix(args)
    r = classify(M)
    if r.finite:
        raise UsageError(f"NC(M) is finite (dimension {r.dimension}); there is no witness module")
    if args.case and args.case != r.case:
        raise UsageError(f"case {args.case} does not apply; the classifier gives {r.case}")
    module = build_witness(r.case, r.witness_recipe, args.depth)
    return M, module


def cmd_witness(args):
    M, module = _witness_for(args)
    report = verify_witness(M, module)
    arrows = [{"src": a.src, "gen": a.gen, "dst": a.dst, "inc": a.inc} for a in module.arrows]
    lines = [f"case: {module.case}", f"depth: {module.depth}",
             f"labels: {len(module.labels)}", "arrows:"]
    lines += [f"  T_{a.gen}: {a.src}_r -> {a.dst}_{'r+1' if a.inc else 'r'}" for a in module.arrows]
    lines.append(f"relations: {report.checks} checked, {report.skipped} skipped at the boundary")
    _emit(args, "\n".join(lines), {
        "case": module.case, "depth": module.depth, "parameters": module.parameters,
        "families": list(module.families), "labels": len(module.labels), "arrows": arrows,
        "checks": report.checks, "skipped": report.skipped})


def _verify_context(args):
    A = _need_context(args)
    M = type_a_matrix(args.n, [2] * (args.n - 1) + [args.d])
    ell = nca.longest_length(args.n, args.d)
    rep = graded_report(M, max(args.max_degree or 0, ell + 1))
    hil = nca.hilbert(args.n, args.d)
    by_length = [0] * len(hil)
    for b in A.basis:
        by_length[b.length()] += 1
    checks = {
        "dimension": rep.total == A.dimension == nca.dimension(args.n, args.d),
        "hilbert": rep.graded_dims[:len(hil)] == hil and rep.graded_dims[len(hil):] == [0],
        "basis lengths": by_length == hil,
        "bimodule decomposition": A.khovanov_decomposition_check().ok,
    }
    lines = [f"dimension: engine {A.dimension}, oracle {rep.total}",
             f"hilbert: engine {','.join(map(str, hil))}, oracle {','.join(map(str, rep.graded_dims))}"]
    payload = {"dimension": A.dimension, "oracle_total": rep.total, "hilbert": hil,
               "oracle_graded_dims": rep.graded_dims}
    return checks, lines, payload


def _verify_matrix(args):
    M = _matrix(args)
    r = classify(M)
    max_degree = args.max_degree if args.max_degree is not None else 10
    rep = graded_report(M, max_degree)
    lines = [f"classifier: {r.verdict} {r.dimension if r.finite else r.case}",
             f"oracle graded dims: {','.join(map(str, rep.graded_dims))}"]
    payload = {"classification": r.to_json_dict(), "oracle_graded_dims": rep.graded_dims}
    if r.finite:
        checks = {"oracle total": rep.total == r.dimension}
    else:
        checks = {"oracle nonvanishing": rep.truncated and all(rep.graded_dims)}
        wr = verify_witness(M, build_witness(r.case, r.witness_recipe, args.depth))
        checks["witness"] = True
        lines.append(f"witness: {wr.checks} relation checks at depth {wr.depth}")
    return checks, lines, payload


def cmd_verify(args):
    if args.matrix:
        checks, lines, payload = _verify_matrix(args)
    else:
        checks, lines, payload = _verify_context(args)
    lines += [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in checks.items()]
    payload["checks"] = {name: ("ok" if ok else "FAIL") for name, ok in checks.items()}
    _emit(args, "\n".join(lines), payload)
    if not all(checks.values()):
        raise CheckFailed("some checks failed")


def cmd_oracle_dim(args):
    M = _matrix(args)
    max_degree = args.max_degree if args.max_degree is not None else 10
    rep = graded_report(M, max_degree)
    _emit(args, f"graded: {','.join(map(str, rep.graded_dims))}\ntotal: {rep.total}",
          {"graded_dims": rep.graded_dims, "total": rep.total, "truncated": rep.truncated})


COMMANDS = {
    "dim": cmd_dim, "hilbert": cmd_hilbert, "basis": cmd_basis, "nf": cmd_nf, "mul": cmd_mul,
    "length": cmd_length, "theta": cmd_theta, "primitives": cmd_primitives,
    "frobenius": cmd_frobenius, "khovanov": cmd_khovanov, "classify": cmd_classify,
    "witness": cmd_witness, "verify": cmd_verify, "oracle-dim": cmd_oracle_dim,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nilcox", description="Generalized nil-Coxeter algebra engine")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--word")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--matrix")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--case")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except ResourceBudgetError as e:
        print(f"nilcox: resource limit: {e}", file=sys.stderr)
        return 2
    except (UsageError, CheckFailed, InvalidMatrixError, ContextMismatch, NoWitnessError,
            WitnessViolation, ValueError, IndexError) as e:
        print(f"nilcox: error: {e}", file=sys.stderr)
        return 1
    return 0
