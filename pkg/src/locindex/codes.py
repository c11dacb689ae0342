"""Canonical code objects, locality accounting, verification, and composition.

A code is stored fully materialized: an explicit block encoder, the query
set of every receiver, and per-receiver linear decoders. Verification runs
two independent backends: an algebraic one (a kernel computation showing
the queried symbols plus side information determine the demanded message,
and a matrix identity showing the stored decoder realizes that map), and
an exhaustive one that enumerates every message tuple and runs the
decoders. The exhaustive backend is skipped above a configurable budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fieldmath
from .errors import CodeFormatError
from .fieldmath import FieldSpec, GFMatrix
from .graphs import SideInfoGraph, induced_subgraph
from .minrank import FittingMatrix

EXHAUSTIVE_BUDGET = 1 << 20


@dataclass(frozen=True)
class Decoder:
    """Linear decode map: x_i = c_queried . query_coeffs + x_side . side_coeffs."""

    query_coeffs: GFMatrix
    side_coeffs: GFMatrix


@dataclass(frozen=True)
class LinearIndexCode:
    field: FieldSpec
    n: int
    m: int
    length: int
    encoder: GFMatrix
    queries: tuple[tuple[int, ...], ...]
    decoders: tuple[Decoder, ...]
    provenance: str

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1 or self.length < 1:
            raise CodeFormatError("code dimensions must be positive")
        if self.encoder.nrows != self.m * self.n or self.encoder.ncols != self.length:
            raise CodeFormatError("encoder shape must be (m*n) x length")
        if len(self.queries) != self.n or len(self.decoders) != self.n:
            raise CodeFormatError("need one query set and one decoder per receiver")
        seen: set[int] = set()
        for i, query in enumerate(self.queries):
            if list(query) != sorted(set(query)):
                raise CodeFormatError(f"query set {i} must be sorted and duplicate-free")
            for t in query:
                if not (0 <= t < self.length):
                    raise CodeFormatError(f"query index {t} out of range")
            seen.update(query)
            dec = self.decoders[i]
            if dec.query_coeffs.nrows != len(query) or dec.query_coeffs.ncols != self.m:
                raise CodeFormatError(f"decoder {i} query coefficients have wrong shape")
            if dec.side_coeffs.ncols != self.m:
                raise CodeFormatError(f"decoder {i} side coefficients have wrong width")
        if seen != set(range(self.length)):
            raise CodeFormatError("every codeword position must be queried by some receiver")


@dataclass(frozen=True)
class CodeMetrics:
    beta: Fraction
    locality: Fraction
    per_receiver: tuple[Fraction, ...]


def code_metrics(code: LinearIndexCode) -> CodeMetrics:
    per = tuple(Fraction(len(r), code.m) for r in code.queries)
    return CodeMetrics(Fraction(code.length, code.m), max(per), per)


def scalar_code(encoder: GFMatrix, fitting: FittingMatrix,
                wt_cap: int | None = None,
                provenance: str = "scalar-minrank") -> LinearIndexCode:
    """Scalar linear code from an encoder whose column space contains the
    fitting matrix columns. Each receiver's decoding vector is the minimum
    weight solution; unused codeword positions are pruned and renumbered."""
    graph = fitting.graph
    if encoder.nrows != graph.n:
        raise ValueError("encoder must have one row per receiver")
    if not fieldmath.column_space_contains(encoder, fitting.matrix):
        raise ValueError("encoder column space does not contain the fitting matrix columns")
    field = encoder.field
    vectors = [fieldmath.min_weight_solution(encoder, fitting.column(i), wt_cap)
               for i in range(graph.n)]
    used = sorted(set().union(*(set(fieldmath.support(d)) for d in vectors)))
    remap = {old: new for new, old in enumerate(used)}
    queries = []
    decoders = []
    for i in range(graph.n):
        supp = fieldmath.support(vectors[i])
        queries.append(tuple(remap[p] for p in supp))
        coeffs = GFMatrix.from_rows(field, [[vectors[i][p]] for p in supp], ncols=1)
        known = sorted(graph.side_info[i])
        side = GFMatrix.from_rows(
            field, [[field.neg(fitting.matrix.at(j, i))] for j in known], ncols=1)
        decoders.append(Decoder(coeffs, side))
    return LinearIndexCode(field, graph.n, 1, len(used), encoder.take_columns(used),
                           tuple(queries), tuple(decoders), provenance)


def assemble_code(graph: SideInfoGraph, instances, provenance: str) -> LinearIndexCode:
    """Direct sum of component codes placed on induced subgraphs.

    instances is a sequence of (vertices, code): vertices are sorted original
    indices and code lives on the induced subgraph under the same relabeling.
    Every receiver must end up with the same total message length.
    """
    instances = list(instances)
    if not instances:
        raise ValueError("nothing to assemble")
    field = instances[0][1].field
    n = graph.n
    totals = [0] * n
    for vertices, code in instances:
        vs = tuple(vertices)
        if list(vs) != sorted(set(vs)):
            raise ValueError("instance vertex sets must be sorted and duplicate-free")
        if any(not 0 <= v < n for v in vs):
            raise ValueError("instance vertex out of range")
        if code.field != field:
            raise ValueError("mismatched fields across parts")
        if code.n != len(vs):
            raise ValueError("instance code size does not match its vertex set")
        for v in vs:
            totals[v] += code.m
    m = totals[0]
    if any(t != m for t in totals):
        raise ValueError("unequal per-receiver message totals")
    length = sum(code.length for _, code in instances)
    q = field.q

    rows = [[0] * length for _ in range(m * n)]
    cursor = [0] * n
    placements = []
    col_off = 0
    for vertices, code in instances:
        sub, vmap = induced_subgraph(graph, vertices)
        offsets = []
        for u, v in enumerate(vmap):
            offsets.append(cursor[v])
            cursor[v] += code.m
        placements.append((vmap, code, sub, offsets, col_off))
        for u, v in enumerate(vmap):
            for s in range(code.m):
                src = code.encoder.row(u * code.m + s)
                dst = rows[v * m + offsets[u] + s]
                for t, val in enumerate(src):
                    if val:
                        dst[col_off + t] = val
        col_off += code.length

    queries = []
    for i in range(n):
        collected = []
        for vmap, code, _sub, offsets, coff in placements:
            if i in vmap:
                u = vmap.index(i)
                collected.extend(coff + t for t in code.queries[u])
        queries.append(tuple(sorted(collected)))

    decoders = []
    for i in range(n):
        position = {c: k for k, c in enumerate(queries[i])}
        known = sorted(graph.side_info[i])
        block_of = {j: w for w, j in enumerate(known)}
        dmat = [[0] * m for _ in range(len(queries[i]))]
        smat = [[0] * m for _ in range(m * len(known))]
        for vmap, code, sub, offsets, coff in placements:
            if i not in vmap:
                continue
            u = vmap.index(i)
            dec = code.decoders[u]
            local_known = sorted(sub.side_info[u])
            if dec.side_coeffs.nrows != code.m * len(local_known):
                raise ValueError("part decoder side coefficients do not match the subgraph")
            out0 = offsets[u]
            for a, t in enumerate(code.queries[u]):
                target = dmat[position[coff + t]]
                for s in range(code.m):
                    val = dec.query_coeffs.at(a, s)
                    if val:
                        target[out0 + s] = val
            for w_idx, w in enumerate(local_known):
                j = vmap[w]
                base = block_of[j] * m + offsets[w]
                for sp in range(code.m):
                    target = smat[base + sp]
                    for s in range(code.m):
                        val = dec.side_coeffs.at(w_idx * code.m + sp, s)
                        if val:
                            target[out0 + s] = val
        decoders.append(Decoder(
            GFMatrix.from_rows(field, dmat, ncols=m),
            GFMatrix.from_rows(field, smat, ncols=m)))

    encoder = GFMatrix.from_rows(field, rows, ncols=length)
    return LinearIndexCode(field, n, m, length, encoder,
                           tuple(queries), tuple(decoders), provenance)


def time_share(graph: SideInfoGraph, parts, provenance: str | None = None) -> LinearIndexCode:
    """Block-diagonal composition of codes on the same graph.

    parts is a sequence of (code, multiplicity). All parts must share the
    field; since every part spans all receivers, per-receiver message totals
    are equal automatically, and the assembler re-checks this.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("time_share needs at least one part")
    everyone = tuple(range(graph.n))
    instances = []
    for code, mult in parts:
        if not isinstance(mult, int) or mult < 1:
            raise ValueError("multiplicities must be positive integers")
        if code.n != graph.n:
            raise ValueError("part built for a different graph size")
        instances.extend((everyone, code) for _ in range(mult))
    if provenance is None:
        provenance = "time-share(" + ", ".join(
            f"{code.provenance} x{mult}" for code, mult in parts) + ")"
    return assemble_code(graph, instances, provenance)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerifyFailure:
    receiver: int
    kind: str
    message: tuple[int, ...]
    conflicting: tuple[int, ...] | None
    detail: str


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    backends: tuple[str, ...]
    failure: VerifyFailure | None


def _np_matrix(mat: GFMatrix) -> np.ndarray:
    out = np.zeros((mat.nrows, mat.ncols), dtype=np.int64)
    for r, row in enumerate(mat.rows):
        out[r, :] = row
    return out


def _rref_np(mat: np.ndarray, q: int):
    a = mat.copy() % q
    nrows, ncols = a.shape
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        nz = np.nonzero(a[pr:, c])[0]
        if nz.size == 0:
            continue
        piv = pr + int(nz[0])
        if piv != pr:
            a[[pr, piv]] = a[[piv, pr]]
        inv = pow(int(a[pr, c]), q - 2, q)
        if inv != 1:
            a[pr] = (a[pr] * inv) % q
        others = np.nonzero(a[:, c])[0]
        others = others[others != pr]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[pr])) % q
        pivots.append(c)
        pr += 1
    return a, pivots


def _nullspace_np(mat: np.ndarray, q: int) -> np.ndarray:
    reduced, pivots = _rref_np(mat, q)
    ncols = mat.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for pr, c in enumerate(pivots):
            basis[k, c] = (-int(reduced[pr, f])) % q
    return basis


def decode_message(code: LinearIndexCode, graph: SideInfoGraph, message) -> tuple[tuple[int, ...], ...]:
    """Run every stored decoder on one concrete message tuple."""
    message = [int(x) % code.field.q for x in message]
    if len(message) != code.m * code.n:
        raise ValueError("message length must be m*n")
    q = code.field.q
    codeword = code.encoder.vec_mul(message)
    out = []
    for i in range(code.n):
        queried = [codeword[t] for t in code.queries[i]]
        known = sorted(graph.side_info[i])
        side = [message[j * code.m + s] for j in known for s in range(code.m)]
        est = [0] * code.m
        dec = code.decoders[i]
        for a, cval in enumerate(queried):
            if cval:
                for s in range(code.m):
                    est[s] = (est[s] + cval * dec.query_coeffs.at(a, s)) % q
        for a, xval in enumerate(side):
            if xval:
                for s in range(code.m):
                    est[s] = (est[s] + xval * dec.side_coeffs.at(a, s)) % q
        out.append(tuple(est))
    return tuple(out)


def verify_code(code: LinearIndexCode, graph: SideInfoGraph,
                exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> VerifyResult:
    """Check validity: every receiver recovers its message from its queried
    symbols and side information, for all message tuples.

    The algebraic backend always runs. The exhaustive backend runs when
    q**(m*n) is within the budget. Returns the first counterexample found.
    """
    if code.n != graph.n:
        raise CodeFormatError("code and graph disagree on the number of receivers")
    q = code.field.q
    m = code.m
    n = code.n
    for i in range(n):
        expected = m * len(graph.side_info[i])
        if code.decoders[i].side_coeffs.nrows != expected:
            raise CodeFormatError(
                f"decoder {i} side coefficients expect {code.decoders[i].side_coeffs.nrows}"
                f" side symbols, graph provides {expected}")

    enc = _np_matrix(code.encoder)
    backends = ("algebraic",)

    # kernel check: messages vanishing on side info and queried symbols
    # must vanish on the demanded block, else two messages are confusable
    for i in range(n):
        known = graph.side_info[i]
        free_blocks = [b for b in range(n) if b not in known]
        free_rows = [b * m + s for b in free_blocks for s in range(m)]
        r_idx = list(code.queries[i])
        sub = enc[np.ix_(free_rows, r_idx)] if r_idx else np.zeros((len(free_rows), 0), dtype=np.int64)
        kernel = _nullspace_np(sub.T, q)
        block_at = free_blocks.index(i) * m
        for vec in kernel:
            if np.any(vec[block_at:block_at + m]):
                message = [0] * (m * n)
                for row, val in zip(free_rows, vec):
                    message[row] = int(val)
                return VerifyResult(False, backends, VerifyFailure(
                    receiver=i, kind="undecodable",
                    message=tuple(message), conflicting=tuple([0] * (m * n)),
                    detail="messages agree on queried symbols and side information "
                           "but differ in the demanded block"))

    # identity check: the stored decoder composed with the encoder is the
    # coordinate projection onto the demanded block
    for i in range(n):
        dec = code.decoders[i]
        r_idx = list(code.queries[i])
        dmat = _np_matrix(dec.query_coeffs)
        total = (enc[:, r_idx] @ dmat) % q if r_idx else np.zeros((m * n, m), dtype=np.int64)
        known = sorted(graph.side_info[i])
        smat = _np_matrix(dec.side_coeffs)
        for w, j in enumerate(known):
            total[j * m:(j + 1) * m] = (total[j * m:(j + 1) * m] + smat[w * m:(w + 1) * m]) % q
        target = np.zeros((m * n, m), dtype=np.int64)
        target[i * m:(i + 1) * m] = np.eye(m, dtype=np.int64)
        if not np.array_equal(total, target):
            bad = np.argwhere(total != target)[0]
            g = int(bad[0])
            message = [0] * (m * n)
            message[g] = 1
            decoded = decode_message(code, graph, message)[i]
            return VerifyResult(False, backends, VerifyFailure(
                receiver=i, kind="decoder",
                message=tuple(message), conflicting=None,
                detail=f"decoder output {decoded} is wrong on a unit message"))

    total_messages = q ** (m * n)
    if total_messages <= exhaustive_budget:
        backends = ("algebraic", "exhaustive")
        powers = np.array([q ** (m * n - 1 - k) for k in range(m * n)], dtype=np.int64)
        chunk = 1 << 14
        for i in range(n):
            r_idx = list(code.queries[i])
            dmat = _np_matrix(code.decoders[i].query_coeffs)
            smat = _np_matrix(code.decoders[i].side_coeffs)
            known = sorted(graph.side_info[i])
            side_cols = [j * m + s for j in known for s in range(m)]
            for start in range(0, total_messages, chunk):
                idx = np.arange(start, min(start + chunk, total_messages), dtype=np.int64)
                msgs = (idx[:, None] // powers[None, :]) % q
                words = (msgs @ enc) % q
                est = words[:, r_idx] @ dmat if r_idx else np.zeros((len(idx), m), dtype=np.int64)
                if side_cols:
                    est = est + msgs[:, side_cols] @ smat
                est %= q
                neq = (est != msgs[:, i * m:(i + 1) * m]).any(axis=1)
                if neq.any():
                    row = int(np.nonzero(neq)[0][0])
                    message = tuple(int(x) for x in msgs[row])
                    decoded = decode_message(code, graph, message)[i]
                    return VerifyResult(False, backends, VerifyFailure(
                        receiver=i, kind="exhaustive",
                        message=message, conflicting=None,
                        detail=f"decoder output {decoded} does not match the message"))
    return VerifyResult(True, backends, None)


# ---------------------------------------------------------------------------
# serialization


def code_to_dict(code: LinearIndexCode) -> dict:
    return {
        "q": code.field.q,
        "n": code.n,
        "m": code.m,
        "len": code.length,
        "encoder": [list(row) for row in code.encoder.rows],
        "queries": [[t + 1 for t in query] for query in code.queries],
        "decoders": [
            {
                "query_coeffs": [list(row) for row in dec.query_coeffs.rows],
                "side_coeffs": [list(row) for row in dec.side_coeffs.rows],
            }
            for dec in code.decoders
        ],
        "provenance": code.provenance,
    }


def code_to_json(code: LinearIndexCode) -> str:
    return json.dumps(code_to_dict(code), sort_keys=True)


def code_from_dict(obj) -> LinearIndexCode:
    try:
        field = FieldSpec(int(obj["q"]))
        n = int(obj["n"])
        m = int(obj["m"])
        length = int(obj["len"])
        encoder = GFMatrix.from_rows(field, obj["encoder"], ncols=length)
        queries = tuple(tuple(int(t) - 1 for t in query) for query in obj["queries"])
        decoders = []
        for k, dec in enumerate(obj["decoders"]):
            decoders.append(Decoder(
                GFMatrix.from_rows(field, dec["query_coeffs"], ncols=m),
                GFMatrix.from_rows(field, dec["side_coeffs"], ncols=m)))
        provenance = str(obj.get("provenance", ""))
        return LinearIndexCode(field, n, m, length, encoder, queries,
                               tuple(decoders), provenance)
    except CodeFormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CodeFormatError(f"malformed code document: {exc}") from exc


def code_from_json(text: str) -> LinearIndexCode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFormatError(f"invalid JSON: {exc}") from exc
    return code_from_dict(obj)
