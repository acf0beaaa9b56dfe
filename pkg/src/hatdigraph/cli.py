"""Command-line front end.

Commands read and write JSON so they compose through pipes::

    hatdigraph gen --family delta_p --p 2 | hatdigraph transform --op pl --times 2 | hatdigraph decompose

Exit status: 0 success, 1 tool error (bad input, cap exceeded, precondition
failure), 2 a verification predicate came out false.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from hatdigraph import analysis, io, periodic, symmetry, transforms
from hatdigraph.alternets import (
    all_alternets_complete_bipartite,
    alternet_digraph,
    alternets,
    alternets_periodic,
    is_loosely_attached,
)
from hatdigraph.digraph import Digraph, complete_bipartite, directed_cycle, is_connected, reverse
from hatdigraph.errors import ArgumentError, CapacityError, HatDigraphError
from hatdigraph.periodic import VoltagePresentation

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2

CHECKS = (
    "aut",
    "iso",
    "transitive",
    "regular",
    "stabilizer",
    "property-z",
    "connected",
    "alternets",
    "skew",
    "hat",
    "descendants",
)
OPS = ("pl", "blowup", "reverse", "al", "window", "quotient", "layered")


class CheckFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


def _span(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"window {text!r} has lo > hi")
    return lo, hi


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hatdigraph",
        description="Construct, transform and verify finite and two-ended periodic digraphs.",
        epilog=f"The default automorphism cap is read from HATDIGRAPH_CAP (currently {symmetry.DEFAULT_CAP}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def finite_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", "-i", help="input JSON file (default: standard input)")
        p.add_argument("--window", type=_span, help="use the window lo:hi of a presentation")
        p.add_argument("--quotient", type=_positive, help="use the cyclic quotient of a presentation")

    gen = sub.add_parser("gen", help="generate an example digraph or presentation")
    gen.add_argument("--family", required=True, choices=transforms.FAMILIES + ("cycle", "complete_bipartite", "line"))
    gen.add_argument("--p", type=int, default=2)
    gen.add_argument("--n", type=int, default=3)
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--r", type=int, default=1)
    gen.add_argument("--s", type=int, default=2, help="second side size for complete_bipartite")
    gen.add_argument("--depth", type=int, default=2)
    gen.add_argument("--base", default="folkman", help="blowup: base family; folkman_two_ended: folkman or k22")

    tr = sub.add_parser("transform", help="apply an operator to the input object")
    tr.add_argument("op", nargs="?", choices=OPS)
    tr.add_argument("--op", dest="op_flag", choices=OPS)
    tr.add_argument("--times", type=_non_negative, default=1)
    tr.add_argument("--k", type=_positive, default=2)
    finite_options(tr)

    ck = sub.add_parser("check", help="run a verification on the input object")
    ck.add_argument("what", nargs="?", choices=CHECKS)
    ck.add_argument("--what", dest="what_flag", choices=CHECKS)
    ck.add_argument("--k", type=_non_negative, default=1)
    ck.add_argument("--depth", type=_non_negative, default=3)
    ck.add_argument("--v", type=_non_negative, default=0, help="vertex id (or cell for presentations)")
    ck.add_argument("--level", type=int, default=0, help="level of the vertex for presentations")
    ck.add_argument("--other", help="second JSON file for 'iso'")
    ck.add_argument("--cap", type=_positive, default=symmetry.DEFAULT_CAP)
    finite_options(ck)

    dec = sub.add_parser("decompose", help="write a presentation as Pl^r(Delta_p)")
    dec.add_argument("--input", "-i")

    ex = sub.add_parser("export", help="export as DOT or JSON")
    ex.add_argument("--format", choices=("dot", "json"), default="dot")
    finite_options(ex)
    return parser


def _read(path: str | None) -> Any:
    text = sys.stdin.read() if path is None else open(path, encoding="utf-8").read()
    return io.from_json(json.loads(text))


def _generate(a: argparse.Namespace):
    family = a.family
    if family == "delta_p":
        return transforms.delta_p(a.p)
    if family == "psi_n":
        return transforms.psi_n(a.n)
    if family == "ladder":
        return transforms.ladder()
    if family == "line":
        return periodic.directed_line()
    if family == "tree":
        return transforms.rooted_tree(a.p, a.depth)
    if family == "cycle":
        return directed_cycle(a.n)
    if family == "complete_bipartite":
        return complete_bipartite(a.r, a.s)
    if family == "pl_power":
        return transforms.pl_power(transforms.delta_p(a.p), a.r)
    if family == "folkman_two_ended":
        if a.base == "k22":
            return transforms.folkman_two_ended(complete_bipartite(2, 2), (0, 1), (2, 3))
        if a.base != "folkman":
            raise ArgumentError(f"unknown base graph {a.base!r}; use folkman or k22")
        return transforms.folkman_construction()
    if family == "blowup":
        bases = {"delta_p": lambda: transforms.delta_p(a.p), "psi_n": lambda: transforms.psi_n(a.n),
                 "ladder": transforms.ladder}
        if a.base not in bases:
            raise ArgumentError(f"blowup base must be one of {sorted(bases)}")
        return transforms.blow_up(bases[a.base](), a.k)
    raise ArgumentError(f"unknown family {family!r}")


def _finite(obj, a: argparse.Namespace) -> tuple[Digraph, dict]:
    """Finite digraph to check, plus a note on how it was obtained."""
    if isinstance(obj, Digraph):
        return obj, {"source": "digraph"}
    if a.window is not None:
        return periodic.window(obj, *a.window), {"source": "window", "window": list(a.window)}
    n = a.quotient if a.quotient is not None else analysis.default_quotient_sizes(obj)[0]
    return periodic.cyclic_quotient(obj, n), {
        "source": "quotient",
        "quotient": n,
        "folded": periodic.is_folded(obj, n),
    }


def _transform(obj, a: argparse.Namespace):
    op = a.op_flag or a.op
    if op is None:
        raise ArgumentError("transform needs an operator")
    if op == "pl":
        if isinstance(obj, Digraph):
            return transforms.pl_times(obj, a.times)
        return transforms.pl_power(obj, a.times)
    if op == "reverse":
        if isinstance(obj, Digraph):
            return reverse(obj)
        return VoltagePresentation(obj.cells, frozenset((w, u, -s) for u, w, s in obj.varcs), obj.labels)
    if op == "al":
        for _ in range(a.times):
            obj = alternet_digraph(obj) if isinstance(obj, Digraph) else alternets_periodic(obj).presentation
        return obj
    if isinstance(obj, Digraph):
        raise ArgumentError(f"operator {op!r} needs a presentation")
    if op == "blowup":
        return transforms.blow_up(obj, a.k)
    if op == "layered":
        return periodic.layered(obj)
    if op == "window":
        if a.window is None:
            raise ArgumentError("--window lo:hi is required")
        return periodic.window(obj, *a.window)
    if op == "quotient":
        if a.quotient is None:
            raise ArgumentError("--quotient n is required")
        return periodic.cyclic_quotient(obj, a.quotient)
    raise ArgumentError(f"unknown operator {op!r}")


def _alternet_report(D: Digraph) -> dict:
    part = alternets(D)
    p = all_alternets_complete_bipartite(D)
    return {
        "class_count": len(part.classes),
        "classes": [
            {
                "id": A.id,
                "arcs": len(A.arcs),
                "sources": sorted(A.sources),
                "sinks": sorted(A.sinks),
                "degenerate": A.is_degenerate(),
                "complete_bipartite": A.is_complete_bipartite(),
            }
            for A in part.classes
        ],
        "complete_bipartite_p": p,
        "trivial_valency": p == 1,
        "loosely_attached": is_loosely_attached(D),
    }


def _check(obj, a: argparse.Namespace) -> dict:
    what = a.what_flag or a.what
    if what is None:
        raise ArgumentError("check needs a predicate (e.g. 'check aut')")
    report: dict[str, Any] = {"check": what}

    if what == "property-z":
        if isinstance(obj, Digraph):
            raise ArgumentError("property-z expects a presentation")
        L = periodic.property_z(obj)
        report["property_z"] = None if L is None else {"potential": list(L.potential), "stride": L.stride}
        if L is not None:
            report["fibre_size"] = periodic.fibre_size(obj, L)
        if L is None:
            raise CheckFailed(report)
        return report

    if what == "connected":
        if isinstance(obj, Digraph):
            report["connected"] = is_connected(obj)
        else:
            c = periodic.derived_connectivity(obj)
            report.update(connected=c.connected, local_group=c.local_group, components=c.components)
        if not report["connected"]:
            raise CheckFailed(report)
        return report

    if what == "skew":
        if isinstance(obj, VoltagePresentation) and (a.window or a.quotient):
            obj, note = _finite(obj, a)
            report.update(note)
        verdict = analysis.is_skew_symmetric(obj)
        report["skew_symmetric"] = verdict.skew
        report["evidence"] = [
            {"kind": kind, "size": n, "witness": None if m is None else list(m)} for kind, n, m in verdict.evidence
        ]
        if not verdict.skew:
            raise CheckFailed(report)
        return report

    if what == "hat":
        if isinstance(obj, Digraph):
            raise ArgumentError("hat expects a presentation")
        cert = analysis.hat_certificate_window(obj, max(a.depth, 1), cap=a.cap)
        report.update(
            depth=cert.depth,
            transitive_on_out=cert.transitive_on_out,
            stabilizer_order_at_depth=cert.stabilizer_order_at_depth,
            window=list(cert.window),
            out_orbits=[list(o) for o in cert.out_orbits],
        )
        if not cert.transitive_on_out:
            raise CheckFailed(report)
        return report

    if what == "alternets" and isinstance(obj, VoltagePresentation) and not (a.window or a.quotient):
        pa = alternets_periodic(obj)
        report["classes"] = [{"sources": sorted(s), "sinks": sorted(t)} for s, t in pa.classes]
        report["class_count"] = len(pa.classes)
        report["al_presentation"] = io.to_json(pa.presentation)
        return report

    if what == "descendants" and isinstance(obj, VoltagePresentation):
        lo, hi = a.window if a.window else (a.level, a.level + a.depth * max(obj.max_shift, 1))
        rep = analysis.descendants_in_window(obj, lo, hi, a.level, a.v, a.depth)
        report.update(window=[lo, hi], count=rep.count, per_depth=list(rep.per_depth), is_rooted_tree=rep.is_rooted_tree)
        return report

    D, note = _finite(obj, a)
    report.update(note)
    if what == "alternets":
        report.update(_alternet_report(D))
        return report
    if what == "descendants":
        rep = analysis.descendants(D, a.v, a.depth)
        report.update(count=rep.count, per_depth=list(rep.per_depth), is_rooted_tree=rep.is_rooted_tree)
        return report
    if what == "iso":
        if a.other is None:
            raise ArgumentError("iso needs --other FILE")
        other = _read(a.other)
        E, _ = _finite(other, a)
        m = symmetry.is_isomorphic(D, E)
        report["isomorphic"] = m is not None
        report["mapping"] = None if m is None else list(m)
        if m is None:
            raise CheckFailed(report)
        return report

    aut = symmetry.automorphisms(D, cap=a.cap)
    report.update(
        vertices=D.n,
        arcs=len(D.arcs),
        group_order=aut.order,
        complete=aut.complete,
        cap_exceeded=not aut.complete,
        generators=len(aut.generators),
        vertex_orbits=len(symmetry.vertex_orbits(aut)),
        arc_orbits=len(symmetry.arc_orbits(aut)),
    )
    if what == "aut":
        return report
    if what == "transitive":
        t = symmetry.is_k_arc_transitive(D, a.k, aut)
        report.update(k=a.k, transitive=t.transitive, vacuous=t.vacuous, k_arcs=t.k_arc_count, k_arc_orbits=t.orbit_count)
        if not t.transitive:
            raise CheckFailed(report)
        return report
    if what == "regular":
        report.update(k=a.k, k_arc_regular=symmetry.is_k_arc_regular(D, max(a.k, 1), aut))
        if not report["k_arc_regular"]:
            raise CheckFailed(report)
        return report
    if what == "stabilizer":
        report.update(v=a.v, stabilizer_order=symmetry.vertex_stabilizer_order(D, a.v, aut))
        return report
    raise ArgumentError(f"unknown check {what!r}")


def _decompose(obj) -> dict:
    if isinstance(obj, Digraph):
        raise ArgumentError("decompose expects a presentation")
    result = analysis.classify(obj)
    d = result.decomposition
    if d is None:
        raise CheckFailed({"decomposition": None, "diagnostic": result.diagnostic})
    return {
        "p": d.p,
        "r": d.r,
        "fibre_size": d.fibre_size,
        "stage_cells": [s.cells for s in d.stages],
        "stage_witnesses": [list(w) for w in d.witnesses],
        "base_quotient_sizes": list(d.base_witness.sizes),
        "base_witnesses": [list(m) for m in d.base_witness.witnesses],
    }


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        if a.command == "gen":
            sys.stdout.write(io.dumps(_generate(a)) + "\n")
            return EXIT_OK
        obj = _read(a.input)
        if a.command == "transform":
            sys.stdout.write(io.dumps(_transform(obj, a)) + "\n")
        elif a.command == "export":
            if a.format == "json":
                out = obj if isinstance(obj, Digraph) or not (a.window or a.quotient) else _finite(obj, a)[0]
                sys.stdout.write(io.dumps(out) + "\n")
            else:
                if isinstance(obj, VoltagePresentation) and not (a.window or a.quotient):
                    a.window = (0, 3)
                sys.stdout.write(io.to_dot(_finite(obj, a)[0]))
        elif a.command == "check":
            _emit(_check(obj, a))
        elif a.command == "decompose":
            _emit(_decompose(obj))
        return EXIT_OK
    except CheckFailed as failed:
        _emit(failed.report)
        return EXIT_FAILED
    except json.JSONDecodeError as exc:
        _emit({"error": f"malformed JSON: {exc.msg}", "line": exc.lineno, "column": exc.colno, "position": exc.pos})
        return EXIT_ERROR
    except CapacityError as exc:
        _emit({"error": str(exc), "cap_exceeded": True})
        return EXIT_ERROR
    except (HatDigraphError, OSError) as exc:
        _emit({"error": str(exc), "type": type(exc).__name__})
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
