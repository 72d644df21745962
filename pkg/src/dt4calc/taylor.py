"""Multigraded Ext of monomial ideals, computed from the Taylor resolution.

For a monomial ideal I with generators m_1..m_r the Taylor complex has one
free summand per subset S of the generators, placed in homological degree
|S| and twisted by lcm(m_S).  It resolves R/I for every monomial ideal, and
its truncation at degree >= 1 resolves I.  Applying Hom(-, R/I) gives a
finite complex of finite dimensional multigraded vector spaces, and the Ext
groups are read off one multidegree at a time by exact Gaussian elimination
over the rationals.

Characters are returned as Laurent polynomials in t1..t4; ideals in fewer
variables are embedded with zero exponents in the unused slots.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BoundExceeded, InternalInconsistency
from .exact import Laurent
from .partitions import MonomialIdeal

GENERATOR_CAP = 16


def _rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as a list of rows."""
    if not rows or not rows[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(nrows):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def _lcm_exps(gens):
    """Componentwise max over every subset of generators, indexed by bitmask."""
    r = len(gens)
    nv = len(gens[0]) if gens else 0
    lcms = [None] * (1 << r)
    lcms[0] = (0,) * nv
    for mask in range(1, 1 << r):
        low = (mask & -mask).bit_length() - 1
        prev = lcms[mask ^ (1 << low)]
        g = gens[low]
        lcms[mask] = tuple(max(a, b) for a, b in zip(prev, g))
    return lcms


def ext_characters(ideal: MonomialIdeal, source: str = "OZ,OZ") -> dict[int, Laurent]:
    """Characters of Ext^i(F, O_Z) for F = O_Z (source "OZ,OZ") or F = I ("I,OZ").

    Returns a dict mapping cohomological degree to the exact torus character;
    degrees with vanishing Ext are simply absent.
    """
    if source not in ("OZ,OZ", "I,OZ"):
        raise ValueError(f"unknown source {source!r}")
    boxes = ideal.staircase()
    nv = ideal.nvars
    gens = ideal.gens
    r = len(gens)
    if r > GENERATOR_CAP:
        raise BoundExceeded(f"{r} generators exceeds the Taylor complex cap {GENERATOR_CAP}")
    if not boxes:
        return {}
    lcms = _lcm_exps(gens)

    # cochain basis: (mask, box) in degree popcount(mask), multidegree box - lcm
    by_mdeg: dict[tuple[int, ...], dict[int, list[tuple[int, tuple[int, ...]]]]] = {}
    for mask in range(1 << r):
        k = mask.bit_count()
        a = lcms[mask]
        for b in boxes:
            mu = tuple(x - y for x, y in zip(b, a))
            by_mdeg.setdefault(mu, {}).setdefault(k, []).append((mask, b))

    # shift: Ext^i(I, O_Z) is cohomology of the same cochain complex with the
    # degree zero column dropped and indices moved down by one
    shift = 0 if source == "OZ,OZ" else 1
    top = nv if source == "OZ,OZ" else nv - 1

    chars: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for mu, levels in sorted(by_mdeg.items()):
        for lst in levels.values():
            lst.sort()
        index = {k: {elem: i for i, elem in enumerate(lst)} for k, lst in levels.items()}
        ranks: dict[int, int] = {}
        for k in sorted(levels):
            cols = levels[k]
            rows_index = index.get(k + 1)
            if not rows_index:
                ranks[k] = 0
                continue
            mat = [[0] * len(cols) for _ in rows_index]
            for j, (mask, b) in enumerate(cols):
                for g in range(r):
                    bit = 1 << g
                    if mask & bit:
                        continue
                    umask = mask | bit
                    # image box: b + lcm(U) - lcm(S), equivalently mu + lcm(U)
                    cbox = tuple(x + y for x, y in zip(mu, lcms[umask]))
                    row = rows_index.get((umask, cbox))
                    if row is None:
                        continue
                    below = (umask & (bit - 1)).bit_count()
                    sign = 1 if below % 2 == 0 else -1
                    mat[row][j] = sign
            ranks[k] = _rank(mat)
        for k, lst in levels.items():
            i = k - shift
            if i < 0:
                continue
            dim = len(lst) - ranks.get(k, 0) - (0 if k == shift else ranks.get(k - 1, 0))
            if dim < 0:
                raise InternalInconsistency("negative cohomology dimension")
            if dim:
                if i > top:
                    raise InternalInconsistency(
                        f"nonzero Ext^{i} beyond the global dimension at multidegree {mu}")
                pad = mu + (0,) * (4 - nv)
                chars.setdefault(i, {})[pad] = Fraction(dim)

    return {i: Laurent(terms) for i, terms in sorted(chars.items())}


def euler_character(ideal: MonomialIdeal, source: str = "OZ,OZ") -> Laurent:
    """Alternating sum of the Ext characters."""
    out = Laurent.zero()
    for i, ch in ext_characters(ideal, source).items():
        out = out + (ch if i % 2 == 0 else -ch)
    return out
