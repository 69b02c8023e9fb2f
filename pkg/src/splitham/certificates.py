"""Certificates: Hamiltonian paths, refutation witnesses, validation, text format."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, components_after_removal, is_connected, try_split_partition, SplitPartition
from . import structure as st

YES = "YES"
NO = "NO"

CUTSET = "CutSet"
TOO_MANY_DEGREE_ONE = "TooManyDegreeOne"
TOO_MANY_IK_PATHS = "TooManyIKPaths"
SHORT_II_PATH = "ShortIIPath"
DISCONNECTED = "Disconnected"
EXHAUSTIVE = "Exhaustive"


@dataclass(frozen=True)
class Witness:
    kind: str
    vertices: tuple[int, ...] = ()          # CutSet / TooManyDegreeOne payload
    pieces: tuple[tuple[int, ...], ...] = ()  # ShortIIPath / TooManyIKPaths payload


@dataclass(frozen=True)
class Certificate:
    verdict: str
    path: tuple[int, ...] | None = None
    witness: Witness | None = None
    trace: tuple[tuple[str, str], ...] = ()

    def is_yes(self) -> bool:
        return self.verdict == YES


def yes_certificate(path, trace=()) -> Certificate:
    return Certificate(YES, path=tuple(path), trace=tuple(trace))


def no_certificate(witness: Witness, trace=()) -> Certificate:
    return Certificate(NO, witness=witness, trace=tuple(trace))


def check_path(g: Graph, path) -> tuple[bool, str]:
    if path is None:
        return False, "NoPath"
    if len(path) != g.n or set(path) != set(range(1, g.n + 1)):
        return False, "NotAPermutation"
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            return False, f"MissingEdge:{a}-{b}"
    return True, "ok"


def validate_certificate(g: Graph, cert: Certificate) -> tuple[bool, str]:
    """Re-check a certificate against the graph alone.

    YES: permutation + adjacency. NO: re-derive the witness's claim.
    Exhaustive witnesses cannot be independently re-checked and are accepted
    by provenance (they are only ever produced by the small-I DP).
    """
    if cert.verdict == YES:
        return check_path(g, cert.path)
    w = cert.witness
    if w is None:
        return False, "MissingWitness"
    if w.kind == DISCONNECTED:
        return (not is_connected(g), "ok" if not is_connected(g) else "GraphIsConnected")
    if w.kind == CUTSET:
        s = w.vertices
        if components_after_removal(g, s) > len(s) + 1:
            return True, "ok"
        return False, "CutConditionHolds"
    if w.kind == TOO_MANY_DEGREE_ONE:
        good = [v for v in w.vertices if g.degree(v) == 1]
        return (len(good) >= 3, "ok" if len(good) >= 3 else "FewerThanThreeLeaves")
    if w.kind in (SHORT_II_PATH, TOO_MANY_IK_PATHS):
        part = try_split_partition(g)
        if not isinstance(part, SplitPartition):
            return False, "NotSplit"
        rep = st.structure_report(g, part)
        if w.kind == SHORT_II_PATH:
            tgt = set(map(tuple, w.pieces or ()))
            for pc in rep.pieces:
                if pc.kind == st.II_PATH and pc.is_short and (not tgt or pc.vertices in tgt):
                    try:
                        st.refutation_from_short_ii(g, pc)
                        return True, "ok"
                    except st.NotAViolation:
                        return False, "CutCheckFailed"
            return False, "NoShortIIPath"
        if rep.ik_paths + rep.short_cycles >= 3:
            return True, "ok"
        return False, "IKBudgetNotExceeded"
    if w.kind == EXHAUSTIVE:
        return True, "exhaustive-by-provenance"
    return False, f"UnknownWitness:{w.kind}"


# -- text serialization --------------------------------------------------------

def render_certificate(cert: Certificate) -> str:
    lines = [f"verdict {cert.verdict}"]
    if cert.path is not None:
        lines.append("path " + " ".join(map(str, cert.path)))
    if cert.witness is not None:
        w = cert.witness
        bits = [f"witness {w.kind}"]
        if w.vertices:
            bits.append(" ".join(map(str, w.vertices)))
        if w.pieces:
            bits.append(";".join(",".join(map(str, pc)) for pc in w.pieces))
        lines.append(" ".join(bits))
    for claim, case in cert.trace:
        lines.append(f"trace {claim}:{case}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    verdict = None
    path = None
    witness = None
    trace = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(" ")
        if tag == "verdict":
            verdict = rest.strip()
        elif tag == "path":
            path = tuple(int(x) for x in rest.split())
        elif tag == "witness":
            parts = rest.split()
            kind = parts[0]
            verts: tuple[int, ...] = ()
            pieces: tuple[tuple[int, ...], ...] = ()
            for tok in parts[1:]:
                if ";" in tok or "," in tok:
                    pieces = tuple(tuple(int(x) for x in grp.split(",")) for grp in tok.split(";"))
                else:
                    verts = verts + (int(tok),)
            witness = Witness(kind, verts, pieces)
        elif tag == "trace":
            claim, _, case = rest.partition(":")
            trace.append((claim, case))
        else:
            raise ValueError(f"line {ln}: unknown tag {tag!r}")
    if verdict not in (YES, NO):
        raise ValueError("missing or bad verdict line")
    return Certificate(verdict, path=path, witness=witness, trace=tuple(trace))
