"""Integer Smith normal form and logarithmic type invariants.

Type invariants of a finite abelian 2-group are written additively: the
group C4 x C2 x C2 has invariants (2, 1, 1), printed "211".  The trivial
group prints "0".  Everything here is exact integer arithmetic; the
matrices involved stay small (at most a few dozen rows).
"""

from __future__ import annotations


def smith_normal_form(rows, ncols):
    """Diagonalise an integer relation matrix by unimodular row/column ops.

    rows is a list of length-ncols integer lists whose row span is the
    relation lattice L.  Returns (diag, q) where diag is the length-ncols
    diagonal with divisibility chain d1 | d2 | ... (zeros for infinite
    factors) and q is the accumulated unimodular column transform: the
    map v -> v @ q carries L onto the lattice spanned by diag * e_i, so
    coordinates of v in the cyclic decomposition are (v @ q) mod diag.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    q = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, k):
        rd, rs = a[dst], a[src]
        for t in range(ncols):
            rd[t] += k * rs[t]

    def addmul_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in q:
            r[dst] += k * r[src]

    def diagonalise():
        t = 0
        while t < min(nr, ncols):
            piv, best = None, None
            for i in range(t, nr):
                row = a[i]
                for j in range(t, ncols):
                    v = abs(row[j])
                    if v and (best is None or v < best):
                        best, piv = v, (i, j)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            while True:
                clean = True
                for i in range(t + 1, nr):
                    if a[i][t]:
                        addmul_row(i, t, -(a[i][t] // a[t][t]))
                        if a[i][t]:
                            swap_rows(t, i)
                            clean = False
                for j in range(t + 1, ncols):
                    if a[t][j]:
                        addmul_col(j, t, -(a[t][j] // a[t][t]))
                        if a[t][j]:
                            swap_cols(t, j)
                            clean = False
                if clean:
                    break
            t += 1
        return t

    rank = diagonalise()
    # Enforce d_i | d_{i+1}: mixing a violating pair of columns and
    # rediagonalising replaces the pair by gcd and lcm.  The multiset of
    # diagonal entries strictly shrinks each round, so this terminates.
    for _ in range(4 * ncols * ncols + 8):
        bad = None
        for i in range(rank - 1):
            x, y = abs(a[i][i]), abs(a[i + 1][i + 1])
            if x and y % x != 0:
                bad = i
                break
        if bad is None:
            break
        addmul_col(bad, bad + 1, 1)
        rank = diagonalise()
    else:
        raise RuntimeError("smith normal form did not stabilise")

    diag = [abs(a[i][i]) if i < min(nr, ncols) else 0 for i in range(ncols)]
    return diag, q


class AbelianQuotient:
    """Z^k modulo a relation lattice, with coordinates in SNF basis."""

    def __init__(self, rows, ncols):
        self.ncols = ncols
        self.diag, self.q = smith_normal_form(rows, ncols)

    def coords(self, v):
        out = []
        for j in range(self.ncols):
            w = sum(v[r] * self.q[r][j] for r in range(self.ncols))
            d = self.diag[j]
            out.append(w % d if d else w)
        return tuple(out)

    def is_zero(self, v) -> bool:
        return all(c == 0 for c in self.coords(v))

    @property
    def order(self) -> int:
        n = 1
        for d in self.diag:
            if d == 0:
                raise ValueError("quotient is infinite")
            n *= d
        return n

    def type_invariants(self):
        out = []
        for d in self.diag:
            if d == 0:
                raise ValueError("quotient is infinite")
            if d == 1:
                continue
            e = d.bit_length() - 1
            if (1 << e) != d:
                raise ValueError(f"not a 2-group quotient: invariant {d}")
            out.append(e)
        return tuple(sorted(out, reverse=True))


def invariants_from_relations(rows, ncols):
    """Cyclic decomposition orders (ascending, 1s dropped) of Z^n / rowspan."""
    diag, _ = smith_normal_form(rows, ncols)
    return sorted(d for d in diag if d != 1)


# -- formatting -------------------------------------------------------

def format_ati(inv) -> str:
    """Digit string while every entry is a single digit, else commas."""
    if not inv:
        return "0"
    if all(e <= 9 for e in inv):
        return "".join(str(e) for e in inv)
    return ",".join(str(e) for e in inv)


def format_ati_exponent(inv) -> str:
    """Run-length form: (2,1,1) -> "21^2".

    The exponent is a single digit so that concatenated runs parse back
    unambiguously; nine equal components is far beyond anything here.
    """
    if not inv:
        return "0"
    out = []
    i = 0
    while i < len(inv):
        j = i
        while j < len(inv) and inv[j] == inv[i] and j - i < 9:
            j += 1
        if j - i > 1:
            out.append(f"{inv[i]}^{j-i}")
        else:
            out.append(str(inv[i]))
        i = j
    return "".join(out)


def parse_ati(text: str):
    """Accepts digit strings ("211"), comma lists ("4,1,1") and run-length
    exponent form ("21^2" meaning 2,1,1)."""
    text = text.strip()
    if text in ("0", ""):
        return ()
    if "," in text:
        return tuple(sorted((int(p) for p in text.split(",")), reverse=True))
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if not ch.isdigit():
            raise ValueError(f"bad type invariant string {text!r}")
        val = int(ch)
        i += 1
        if i < len(text) and text[i] == "^":
            # single-digit exponent, so "2^21" reads as 2,2,1
            rep = int(text[i + 1])
            out.extend([val] * rep)
            i += 2
        else:
            out.append(val)
    return tuple(sorted(out, reverse=True))


def ati_leq(a, b) -> bool:
    """Componentwise domination after right-padding with zeros.

    This is the partial order in which type invariants grow along
    descendant trees: a <= b when every component of a is at most the
    matching component of b, both sorted descending.
    """
    a = tuple(sorted(a, reverse=True))
    b = tuple(sorted(b, reverse=True))
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return all(x <= y for x, y in zip(a, b))


# -- subgroup abelianisation ------------------------------------------

def subgroup_relation_matrix(sub):
    """Integer relations of sub^ab on the igs of sub.

    With igs u_1..u_k, the abelianised quotient is Z^k modulo the rows
    2*e_r - coords(u_r^2) for each r and e_s - coords(u_s conjugated by
    u_r) for r != s.  Coordinates are exponents along the igs, which exist
    because squares and conjugates stay inside the subgroup.
    """
    g = sub.group
    k = len(sub.igs)
    rows = []
    for r, u in enumerate(sub.igs):
        sq = g.mul(u, u)
        cs = sub.coords(sq)
        assert cs is not None, "square left the subgroup"
        row = [-c for c in cs]
        row[r] += 2
        rows.append(row)
    for r in range(k):
        for s in range(k):
            if r == s:
                continue
            cj = g.conj(sub.igs[s], sub.igs[r])
            cs = sub.coords(cj)
            assert cs is not None, "conjugate left the subgroup"
            row = [-c for c in cs]
            row[s] += 1
            rows.append(row)
    return rows, k


def subgroup_quotient(sub) -> AbelianQuotient:
    rows, k = subgroup_relation_matrix(sub)
    return AbelianQuotient(rows, k)


def abelian_type_invariants(sub):
    """Logarithmic type invariants of sub/sub', descending, e.g. (2,1,1)."""
    return subgroup_quotient(sub).type_invariants()
