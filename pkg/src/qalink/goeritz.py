"""Link signature from a Goeritz matrix with the Gordon-Litherland correction."""

from __future__ import annotations

from fractions import Fraction

from .diagram import LinkDiagram, _faces


def inertia(matrix: list[list[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # Congruence x_i <- x_i + x_j makes the diagonal entry 2*m[i][j] nonzero.
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        p = m[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / p
            if f:
                for k in active:
                    m[i][k] -= f * m[piv][k]
        for i in active:
            m[i][piv] = m[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def _coloring(crossings, shade_first: bool = True):
    """Face list plus a 2-colouring; adjacent faces at each crossing differ."""
    faces = _faces(crossings)
    where = {corner: f for f, face in enumerate(faces) for corner in face}
    color = {0: shade_first}
    stack = [0]
    while stack:
        f = stack.pop()
        for k, i in faces[f]:
            for di in (1, 3):
                g = where[(k, (i + di) % 4)]
                if g not in color:
                    color[g] = not color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise ValueError("faces are not checkerboard colourable")
    return faces, where, color


def goeritz_data(crossings, signs, shade_first: bool = True):
    """Goeritz matrix (one shaded region dropped) and the correction term.

    With this choice of crossing index the signature is ``mu - sign(G)``,
    independent of which colour class is shaded.
    """
    faces, where, color = _coloring(crossings, shade_first)
    shaded = sorted(f for f in range(len(faces)) if color[f])
    pos = {f: n for n, f in enumerate(shaded)}
    size = len(shaded)
    g = [[0] * size for _ in range(size)]
    mu = 0
    for k, s in enumerate(signs):
        odd = color[where[(k, 1)]]
        eta = 1 if odd else -1
        a, b = (where[(k, 1)], where[(k, 3)]) if odd else (where[(k, 0)], where[(k, 2)])
        if a != b:
            g[pos[a]][pos[b]] -= eta
            g[pos[b]][pos[a]] -= eta
            g[pos[a]][pos[a]] += eta
            g[pos[b]][pos[b]] += eta
        if s * eta < 0:
            mu += eta
    reduced = [row[1:] for row in g[1:]]
    return reduced, mu


def signature(d: LinkDiagram) -> int:
    """Classical signature; positive for the negative trefoil."""
    total = 0
    for group in d.split_groups:
        crossings = [d.crossings[k] for k in group]
        signs = [d.signs[k] for k in group]
        matrix, mu = goeritz_data(crossings, signs)
        p, n, _ = inertia(matrix)
        total += mu - (p - n)
    return total
