"""Classification of spanning solid configurations in an 8-dimensional
binary ambient space.

An ordered configuration of ``n`` solids (4-dimensional subspaces, each
pair spanning the ambient space) can be normalised so that its solids are
the column spans of

    (I|O), (O|I), (I|I), (I|A_1), ..., (I|A_{n-3})

with every parameter matrix and every sum of two parameter matrices
invertible, and with ``A_i`` and ``A_i + I`` invertible.  The residual
freedom is simultaneous conjugation of all parameters, and reorderings of
the solids act through re-normalisation.  The canonical representative of
an unordered configuration is the lexicographically minimal parameter
tuple over all orderings and conjugations; this module computes it with
pruning on the conjugacy class of the first parameter.

``enumerate_solid_configs`` produces all canonical representatives for
n = 4 (three of them; five before merging solid permutations in) and for
n = 6 via a staged search: 4-solid representatives, extended one solid at
a time with canonical deduplication at each stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from ..errors import ValidationError
from ..f2linalg import BinMatrix, inverse
from . import mat4

Solid = Tuple[int, int, int, int]  # ambient column vectors, bit r = row r


def std_solids(params: Sequence[int]) -> List[Solid]:
    """Column tuples of the normal-form solids for a parameter tuple."""
    solids: List[Solid] = [
        (1, 2, 4, 8),
        (16, 32, 64, 128),
        tuple((1 << j) | (1 << (4 + j)) for j in range(4)),
    ]
    for M in params:
        solids.append(tuple((1 << j) | (mat4.col(M, j) << 4) for j in range(4)))
    return solids


def is_valid_params(params: Sequence[int]) -> bool:
    """Every pair of normal-form solids spans the ambient space."""
    mats = list(params)
    for i, M in enumerate(mats):
        if not (mat4.is_invertible(M) and mat4.is_invertible(M ^ mat4.IDENTITY)):
            return False
        for other in mats[i + 1 :]:
            if not mat4.is_invertible(M ^ other):
                return False
    return True


def _apply8(rows: Sequence[int], v: int) -> int:
    out = 0
    for r in range(8):
        out |= ((rows[r] & v).bit_count() & 1) << r
    return out


def _frame_inverse_rows(s0: Solid, s1: Solid) -> Tuple[int, ...]:
    rows = []
    cols = s0 + s1
    for r in range(8):
        bits = 0
        for c in range(8):
            bits |= ((cols[c] >> r) & 1) << c
        rows.append(bits)
    inv = inverse(BinMatrix(rows=tuple(rows), ncols=8))
    if inv is None:
        raise ValidationError(
            "invalid configuration: two solids fail to span the ambient space"
        )
    return inv.rows


# ---------------------------------------------------------------------------
# lazily built conjugacy tables over the valid parameter matrices
# ---------------------------------------------------------------------------

_TABLES: Optional[Dict[str, object]] = None


def _tables() -> Dict[str, object]:
    global _TABLES
    if _TABLES is None:
        gl: Set[int] = set()
        valid: List[int] = []
        for m in range(1, 1 << 16):
            if mat4.is_invertible(m):
                gl.add(m)
                if mat4.is_invertible(m ^ mat4.IDENTITY):
                    valid.append(m)
        cid_of: Dict[int, Tuple[int, int]] = {}
        classmin: Dict[Tuple[int, int], int] = {}
        for m in valid:
            cid = mat4.class_id(m)
            cid_of[m] = cid
            if cid not in classmin or m < classmin[cid]:
                classmin[cid] = m
        _TABLES = {
            "gl": gl,
            "valid": valid,
            "cid_of": cid_of,
            "classmin": classmin,
            "transporters": {},
        }
    return _TABLES


def _cid(m: int) -> Tuple[int, int]:
    tables = _tables()
    cid_of: Dict[int, Tuple[int, int]] = tables["cid_of"]  # type: ignore[assignment]
    cid = cid_of.get(m)
    if cid is None:
        cid = mat4.class_id(m)
        cid_of[m] = cid
    return cid


def _classmin(m: int) -> int:
    return _tables()["classmin"][_cid(m)]  # type: ignore[index]


def _transporters(m: int) -> Tuple[int, ...]:
    """All L with L m L^-1 = classmin(class of m)."""
    tables = _tables()
    memo: Dict[int, Tuple[int, ...]] = tables["transporters"]  # type: ignore[assignment]
    got = memo.get(m)
    if got is None:
        target = _classmin(m)
        got = tuple(mat4.conjugators((m,), (target,)))
        memo[m] = got
    return got


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Achiever:
    """One (ordering, conjugation) pair realising the canonical parameters.

    ``order`` maps normal-form positions to input solid indices.  The
    ambient transformation it encodes sends input solid ``order[p]`` onto
    normal-form position ``p``; ``local_maps[p]`` is the induced change of
    local coordinates (input column coefficients -> new local coordinates).
    """

    order: Tuple[int, ...]
    frame_rows: Tuple[int, ...]
    p_inv: int
    q_inv: int
    conjugator: int

    @property
    def local_maps(self) -> Tuple[int, ...]:
        maps = [
            mat4.mul(self.conjugator, self.p_inv),
            mat4.mul(self.conjugator, self.q_inv),
            self.conjugator,
        ]
        for pos in range(3, len(self.order)):
            u, _ = self._normalised_blocks(self._input_solid(pos))
            maps.append(mat4.mul(self.conjugator, u))
        return tuple(maps)

    _solids: "Tuple[Solid, ...]" = ()  # filled in by canonical_params

    def _input_solid(self, pos: int) -> Solid:
        return self._solids[self.order[pos]]

    def _normalised_blocks(self, solid: Solid) -> Tuple[int, int]:
        cols = [_apply8(self.frame_rows, c) for c in solid]
        u = mat4.from_cols([mat4.apply(self.p_inv, c & 0xF) for c in cols])
        v = mat4.from_cols([mat4.apply(self.q_inv, c >> 4) for c in cols])
        return u, v

    def transported_param(self, solid: Solid) -> int:
        """Parameter of an extra passenger solid under this transformation."""
        u, v = self._normalised_blocks(solid)
        u_inv = mat4.inv(u)
        if u_inv is None or not mat4.is_invertible(v):
            raise ValidationError(
                "passenger solid does not span with the frame solids"
            )
        l_inv = mat4.inv(self.conjugator)
        return mat4.mul(
            mat4.mul(self.conjugator, mat4.mul(v, u_inv)), l_inv
        )


def _orderings(
    solids: Sequence[Solid],
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], int, int, Dict[int, Tuple[int, int]]]]:
    """Yield (order, frame_rows, p_inv, q_inv, {solid index: (U, param)})."""
    n = len(solids)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            frame_rows = _frame_inverse_rows(solids[i], solids[j])
            trans = [
                tuple(_apply8(frame_rows, c) for c in s) for s in solids
            ]
            remaining = [k for k in range(n) if k not in (i, j)]
            for s2 in remaining:
                t2 = trans[s2]
                p = mat4.from_cols([c & 0xF for c in t2])
                q = mat4.from_cols([c >> 4 for c in t2])
                p_inv, q_inv = mat4.inv(p), mat4.inv(q)
                if p_inv is None or q_inv is None:
                    raise ValidationError(
                        "invalid configuration: two solids share a point"
                    )
                rest = [k for k in remaining if k != s2]
                info: Dict[int, Tuple[int, int]] = {}
                for k in rest:
                    tk = trans[k]
                    u = mat4.from_cols(
                        [mat4.apply(p_inv, c & 0xF) for c in tk]
                    )
                    v = mat4.from_cols(
                        [mat4.apply(q_inv, c >> 4) for c in tk]
                    )
                    u_inv = mat4.inv(u)
                    if u_inv is None or not mat4.is_invertible(v):
                        raise ValidationError(
                            "invalid configuration: two solids share a point"
                        )
                    info[k] = (u, mat4.mul(v, u_inv))
                for tail in permutations(rest):
                    yield (i, j, s2) + tail, frame_rows, p_inv, q_inv, info


def canonical_params(
    params: Sequence[int], *, collect_achievers: bool = False
) -> Tuple[Tuple[int, ...], List[Achiever]]:
    """Canonical parameter tuple of the configuration, plus (optionally)
    every (ordering, conjugation) pair that realises it."""
    m = len(params)
    if not 1 <= m <= 3:
        raise ValidationError(
            f"configurations with {m + 3} solids are not supported"
        )
    solids = tuple(std_solids(params))
    # Pass 1: smallest reachable class minimum for the first parameter.
    best_a: Optional[int] = None
    survivors = []
    for order, frame_rows, p_inv, q_inv, info in _orderings(solids):
        a_raw = info[order[3]][1]
        key = _classmin(a_raw)
        if best_a is None or key < best_a:
            best_a = key
            survivors = [(order, frame_rows, p_inv, q_inv, info)]
        elif key == best_a:
            survivors.append((order, frame_rows, p_inv, q_inv, info))
    assert best_a is not None
    # Pass 2: minimise the remaining parameters over the transporters.
    best_tail: Optional[Tuple[int, ...]] = None
    achievers: List[Achiever] = []
    for order, frame_rows, p_inv, q_inv, info in survivors:
        a_raw = info[order[3]][1]
        raws = [info[order[3 + t]][1] for t in range(1, m)]
        for l in _transporters(a_raw):
            l_inv = mat4.inv(l)
            tail = tuple(mat4.mul(mat4.mul(l, r), l_inv) for r in raws)
            if best_tail is None or tail < best_tail:
                best_tail = tail
                if collect_achievers:
                    achievers = [
                        Achiever(order, frame_rows, p_inv, q_inv, l)
                    ]
            elif tail == best_tail and collect_achievers:
                achievers.append(Achiever(order, frame_rows, p_inv, q_inv, l))
    assert best_tail is not None
    canonical = (best_a,) + best_tail
    if collect_achievers:
        for ach in achievers:
            object.__setattr__(ach, "_solids", solids)
    return canonical, achievers


def config_automorphisms(params: Sequence[int]) -> List[Achiever]:
    """All automorphisms of a canonical configuration, as achievers."""
    canonical, achievers = canonical_params(params, collect_achievers=True)
    if canonical != tuple(params):
        raise ValidationError("automorphisms are defined on canonical parameters")
    return achievers


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Config:
    """A canonical unordered configuration of ``n`` solids."""

    n: int
    params: Tuple[int, ...]

    def solids(self) -> List[Solid]:
        return std_solids(self.params)


def _class_reps() -> List[int]:
    tables = _tables()
    return sorted(tables["classmin"].values())  # type: ignore[union-attr]


def _valid_partners(fixed: Sequence[int]) -> List[int]:
    tables = _tables()
    gl: Set[int] = tables["gl"]  # type: ignore[assignment]
    out = []
    for c in tables["valid"]:  # type: ignore[union-attr]
        if all((c ^ f) in gl for f in fixed):
            out.append(c)
    return out


def _orbit_representatives(
    candidates: Sequence[int],
    automorphisms: Sequence[Achiever],
    params: Sequence[int],
    max_automorphisms: int = 40,
) -> List[int]:
    """One candidate per orbit under the automorphism-induced maps.

    Using a subset of the automorphisms is sound: it only reduces the
    amount of deduplication done here, and the global canonical set removes
    whatever survives.
    """
    auts = [a for a in automorphisms[:max_automorphisms] if a.order != tuple(range(len(a.order)))or a.conjugator != mat4.IDENTITY]
    cand_set = set(candidates)
    seen: Set[int] = set()
    reps = []
    for c in sorted(cand_set):
        if c in seen:
            continue
        reps.append(c)
        frontier = [c]
        seen.add(c)
        while frontier:
            cur = frontier.pop()
            solid = std_solids(list(params) + [cur])[-1]
            for aut in auts:
                image = aut.transported_param(solid)
                if image in cand_set and image not in seen:
                    seen.add(image)
                    frontier.append(image)
    return reps


def enumerate_solid_configs(
    n: int,
    *,
    pairs: Optional[Sequence[Tuple[int, ...]]] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> List[Config]:
    """All canonical n-solid configurations (n = 4 or 6).

    For n = 6 a precomputed ``enumerate_solid_pairs()`` result may be passed
    to skip the five-solid staging level.
    """
    if n == 4:
        reps = sorted({canonical_params((a,))[0] for a in _class_reps()})
        return [Config(4, p) for p in reps]
    if n == 6:
        if pairs is None:
            pairs = enumerate_solid_pairs(progress=progress)
        out: Set[Tuple[int, ...]] = set()
        for idx, (a, b) in enumerate(pairs):
            auts = config_automorphisms((a, b))
            cands = _valid_partners((a, b))
            reps_c = _orbit_representatives(cands, auts, (a, b))
            for c in reps_c:
                out.add(canonical_params((a, b, c))[0])
            if progress:
                progress(
                    f"five-solid representative {idx + 1}/{len(pairs)}: "
                    f"{len(cands)} extensions, {len(reps_c)} orbit representatives, "
                    f"{len(out)} six-solid configurations so far"
                )
        return [Config(6, p) for p in sorted(out)]
    raise ValidationError(f"no classification is implemented for {n} solids")


def enumerate_solid_pairs(
    *, progress: Optional[Callable[[str], None]] = None
) -> List[Tuple[int, ...]]:
    """Canonical 5-solid configurations (the six-solid staging level)."""
    out: Set[Tuple[int, ...]] = set()
    for cfg in enumerate_solid_configs(4):
        (a,) = cfg.params
        partners = _valid_partners((a,))
        for i, b in enumerate(partners):
            out.add(canonical_params((a, b))[0])
            if progress and (i + 1) % 500 == 0:
                progress(
                    f"four-solid {a:#06x}: {i + 1}/{len(partners)} extensions, "
                    f"{len(out)} five-solid configurations so far"
                )
    return sorted(out)
