"""Finite-dimensional Lie algebras by structure constants and their
exact representations.

Provides the sl2 irreducible family (weight bases), sl2/sl3 built-ins,
a JSON loader for arbitrary structure-constants files, intertwiner
solvers for Hom_g(g (x) U, V) and Hom_g(U, V), and the Killing form.
All checks (antisymmetry, Jacobi, bracket compatibility of matrices)
are exact and run at construction time.
"""

from __future__ import annotations

import json

from .exactnum import RAT, Scalar, SC_ONE, SC_ZERO, parse_scalar
from .multipoly import sparse_rref


class DimensionMismatch(ValueError):
    """Representations over different algebras or with inconsistent sizes."""


class DegenerateForm(ArithmeticError):
    """Killing form is singular: the algebra is not semisimple."""


class StructureError(ValueError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


def zeros(n, m):
    return [[SC_ZERO] * m for _ in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = zeros(n, m)
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            for j in range(m):
                if Bt[j]:
                    row[j] = row[j] + a * Bt[j]
    return out

def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_vec(A, v):
    return [
        sum((a * x for a, x in zip(row, v) if a and x), SC_ZERO) for row in A
    ]


class LieAlgebra:
    """Lie algebra given by exact structure constants [x_i, x_j] = sum c_ijk x_k."""

    def __init__(self, name, basis_names, brackets, check=True):
        self.name = name
        self.basis_names = list(basis_names)
        self.dim = len(self.basis_names)
        # brackets: dict (i, j) -> dict k -> Scalar, stored for all ordered pairs
        full = {}
        for (i, j), comps in brackets.items():
            comps = {k: Scalar.of(c) for k, c in comps.items() if Scalar.of(c)}
            if comps:
                full[(i, j)] = comps
        self.brackets = full
        if check:
            self._check_antisymmetry()
            self._check_jacobi()

    def bracket(self, i, j):
        return self.brackets.get((i, j), {})

    def bracket_vec(self, v, w):
        """Bracket of two coefficient vectors."""
        out = [SC_ZERO] * self.dim
        for i, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(w):
                if not b:
                    continue
                for k, c in self.bracket(i, j).items():
                    out[k] = out[k] + a * b * c
        return out

    def _check_antisymmetry(self):
        for i in range(self.dim):
            if self.bracket(i, i):
                raise StructureError(f"[x_{i}, x_{i}] != 0")
            for j in range(i + 1, self.dim):
                fwd, bwd = self.bracket(i, j), self.bracket(j, i)
                keys = set(fwd) | set(bwd)
                for k in keys:
                    if fwd.get(k, SC_ZERO) != -bwd.get(k, SC_ZERO):
                        raise StructureError(f"antisymmetry fails at ({i},{j},{k})")

    def _check_jacobi(self):
        n = self.dim
        for i in range(n):
            ei = [SC_ONE if t == i else SC_ZERO for t in range(n)]
            for j in range(i + 1, n):
                ej = [SC_ONE if t == j else SC_ZERO for t in range(n)]
                for k in range(j + 1, n):
                    ek = [SC_ONE if t == k else SC_ZERO for t in range(n)]
                    acc = self.bracket_vec(ei, self.bracket_vec(ej, ek))
                    for t, c in enumerate(self.bracket_vec(ej, self.bracket_vec(ek, ei))):
                        acc[t] = acc[t] + c
                    for t, c in enumerate(self.bracket_vec(ek, self.bracket_vec(ei, ej))):
                        acc[t] = acc[t] + c
                    if any(acc):
                        raise StructureError(f"Jacobi fails at triple ({i},{j},{k})")

    def adjoint(self):
        mats = []
        for i in range(self.dim):
            m = zeros(self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.bracket(i, j).items():
                    m[k][j] = c
            mats.append(m)
        return Representation(self, self.dim, mats, name="adj")

    def is_perfect(self):
        """[g, g] = g, checked by the rank of the span of all brackets."""
        rows = []
        for (i, j), comps in self.brackets.items():
            if i < j:
                rows.append({k: c for k, c in comps.items()})
        if not rows:
            return self.dim == 0
        _, order = sparse_rref(rows)
        return len(order) == self.dim


class Representation:
    """Exact matrices rho(x_i) with rho[x_i]rho[x_j] - rho[x_j]rho[x_i] = rho([x_i,x_j])."""

    def __init__(self, algebra, dim, matrices, name="rep", check=True):
        self.algebra = algebra
        self.dim = dim
        self.name = name
        self.matrices = [
            [[Scalar.of(c) for c in row] for row in m] for m in matrices
        ]
        if len(self.matrices) != algebra.dim:
            raise DimensionMismatch("one matrix per basis element required")
        for m in self.matrices:
            if len(m) != dim or any(len(row) != dim for row in m):
                raise DimensionMismatch("matrix size does not match module dimension")
        if check:
            self._check_bracket_compat()

    def _check_bracket_compat(self):
        g = self.algebra
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                comm = mat_sub(
                    mat_mul(self.matrices[i], self.matrices[j]),
                    mat_mul(self.matrices[j], self.matrices[i]),
                )
                expect = zeros(self.dim, self.dim)
                for k, c in g.bracket(i, j).items():
                    mk = self.matrices[k]
                    for a in range(self.dim):
                        for b in range(self.dim):
                            if mk[a][b]:
                                expect[a][b] = expect[a][b] + c * mk[a][b]
                if comm != expect:
                    raise StructureError(
                        f"{self.name}: bracket compatibility fails at pair ({i},{j})"
                    )

    def act(self, i, vec):
        return mat_vec(self.matrices[i], vec)

    def is_trivial(self):
        return all(
            not m[a][b] for m in self.matrices for a in range(self.dim) for b in range(self.dim)
        )

    def entry(self, i, a, b):
        return self.matrices[i][a][b]


def trivial_rep(algebra, dim=1):
    return Representation(algebra, dim, [zeros(dim, dim) for _ in range(algebra.dim)], name="triv")


def dual_rep(rep, name=None):
    """Contragredient representation: x -> -rho(x)^T."""
    mats = [
        [[-rep.matrices[i][b][a] for b in range(rep.dim)] for a in range(rep.dim)]
        for i in range(rep.algebra.dim)
    ]
    return Representation(rep.algebra, rep.dim, mats, name=name or f"{rep.name}*")


def sym_square(rep, name=None):
    """Symmetric square on the basis e_a.e_b, a <= b."""
    n = rep.dim
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    index = {p: i for i, p in enumerate(pairs)}
    mats = []
    for i in range(rep.algebra.dim):
        m = zeros(len(pairs), len(pairs))
        for (a, b), col in index.items():
            # x.(e_a.e_b) = (x e_a).e_b + e_a.(x e_b)
            for t in range(n):
                c = rep.entry(i, t, a)
                if c:
                    r = index[(min(t, b), max(t, b))]
                    m[r][col] = m[r][col] + c
                c = rep.entry(i, t, b)
                if c:
                    r = index[(min(a, t), max(a, t))]
                    m[r][col] = m[r][col] + c
        mats.append(m)
    return Representation(rep.algebra, len(pairs), mats, name=name or f"Sym2({rep.name})")


# ----------------------------------------------------------------------
# Built-ins: sl2 and sl3
# ----------------------------------------------------------------------


def sl2():
    """sl2 with basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    E, H, F = 0, 1, 2
    two = Scalar(RAT(2))
    br = {
        (E, F): {H: SC_ONE},
        (F, E): {H: -SC_ONE},
        (H, E): {E: two},
        (E, H): {E: -two},
        (H, F): {F: -two},
        (F, H): {F: two},
    }
    return LieAlgebra("sl2", ["e", "h", "f"], br)


def sl2_irrep(m):
    """The (m+1)-dimensional irreducible sl2-module on weight vectors w_0..w_m.

    h w_j = (m - 2j) w_j,  e w_j = j(m - j + 1) w_{j-1},  f w_j = w_{j+1}.
    """
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    g = sl2()
    n = m + 1
    e = zeros(n, n)
    h = zeros(n, n)
    f = zeros(n, n)
    for j in range(n):
        h[j][j] = Scalar(RAT(m - 2 * j))
        if j >= 1:
            e[j - 1][j] = Scalar(RAT(j * (m - j + 1)))
        if j + 1 < n:
            f[j + 1][j] = SC_ONE
    return Representation(g, n, [e, h, f], name=f"V{m}")


def _gl_matrix_units(n):
    units = {}
    for a in range(n):
        for b in range(n):
            m = [[1 if (i, j) == (a, b) else 0 for j in range(n)] for i in range(n)]
            units[(a, b)] = m
    return units


def sl3():
    """sl3 from its defining 3x3 matrices; basis e12,e13,e23,h1,h2,f12,f13,f23."""
    units = _gl_matrix_units(3)
    basis = [
        ("e12", units[(0, 1)]),
        ("e13", units[(0, 2)]),
        ("e23", units[(1, 2)]),
        ("h1", [[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        ("h2", [[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        ("f12", units[(1, 0)]),
        ("f13", units[(2, 0)]),
        ("f23", units[(2, 1)]),
    ]
    names = [n for n, _ in basis]
    mats = [m for _, m in basis]

    def expand(m):
        """Write a traceless 3x3 integer matrix in the chosen basis."""
        coeffs = [0] * 8
        coeffs[0], coeffs[1], coeffs[2] = m[0][1], m[0][2], m[1][2]
        coeffs[5], coeffs[6], coeffs[7] = m[1][0], m[2][0], m[2][1]
        coeffs[3] = m[0][0]
        coeffs[4] = -m[2][2]
        assert m[1][1] == -coeffs[3] + coeffs[4]
        return coeffs

    br = {}
    for i in range(8):
        for j in range(8):
            if i == j:
                continue
            a, b = mats[i], mats[j]
            comm = [
                [
                    sum(a[r][t] * b[t][c] - b[r][t] * a[t][c] for t in range(3))
                    for c in range(3)
                ]
                for r in range(3)
            ]
            comps = {k: Scalar(RAT(v)) for k, v in enumerate(expand(comm)) if v}
            if comps:
                br[(i, j)] = comps
    g = LieAlgebra("sl3", names, br)
    g._fund_matrices = mats
    return g


def sl3_fundamental(g=None):
    g = g or sl3()
    mats = getattr(g, "_fund_matrices", None)
    if mats is None:
        raise ValueError("sl3_fundamental requires the built-in sl3")
    return Representation(g, 3, [[[Scalar(RAT(v)) for v in row] for row in m] for m in mats], name="fund")


# ----------------------------------------------------------------------
# Intertwiners and the invariant form
# ----------------------------------------------------------------------


def _tensor_action(g, U, i, j_gen, u_col):
    """Action of basis element i on g (x) U at the basis vector (x_{j_gen} (x) u_col).

    Yields ((k_gen, u_row), coeff) of the image [x_i, x_j] (x) u + x_j (x) (x_i u).
    """
    for k, c in g.bracket(i, j_gen).items():
        yield (k, u_col), c
    for r in range(U.dim):
        c = U.entry(i, r, u_col)
        if c:
            yield (j_gen, r), c


def intertwiner_space(g, U, V):
    """Exact basis of Hom_g(g (x) U, V), RREF-normalized.

    Unknowns are the matrix entries T[v, (y, u)]; the equivariance
    rho(x) T(y (x) u) = T([x,y] (x) u) + T(y (x) pi(x) u) gives the rows.
    """
    if U.algebra is not g or V.algebra is not g:
        raise DimensionMismatch("representations must live over the given algebra")
    ncols_inner = g.dim * U.dim

    def col(v_row, y, u):
        return (v_row * ncols_inner) + y * U.dim + u

    rows = []
    for x in range(g.dim):
        for y in range(g.dim):
            for u in range(U.dim):
                # for each output coordinate l of V:
                for l in range(V.dim):
                    row = {}
                    for t in range(V.dim):
                        c = V.entry(x, l, t)
                        if c:
                            row[col(t, y, u)] = row.get(col(t, y, u), SC_ZERO) + c
                    for (y2, u2), c in _tensor_action(g, U, x, y, u):
                        key = col(l, y2, u2)
                        cur = row.get(key, SC_ZERO) - c
                        if cur:
                            row[key] = cur
                        else:
                            row.pop(key, None)
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
    total = V.dim * ncols_inner
    return _nullspace_to_matrices(rows, total, V.dim, ncols_inner)


def module_homs(g, U, V):
    """Exact basis of Hom_g(U, V) (linear maps commuting with the action)."""
    if U.algebra is not g or V.algebra is not g:
        raise DimensionMismatch("representations must live over the given algebra")

    def col(v_row, u):
        return v_row * U.dim + u

    rows = []
    for x in range(g.dim):
        for u in range(U.dim):
            for l in range(V.dim):
                row = {}
                for t in range(V.dim):
                    c = V.entry(x, l, t)
                    if c:
                        row[col(t, u)] = row.get(col(t, u), SC_ZERO) + c
                for r in range(U.dim):
                    c = U.entry(x, r, u)
                    if c:
                        key = col(l, r)
                        cur = row.get(key, SC_ZERO) - c
                        if cur:
                            row[key] = cur
                        else:
                            row.pop(key, None)
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return _nullspace_to_matrices(rows, V.dim * U.dim, V.dim, U.dim)


def _nullspace_to_matrices(rows, total, nr, nc):
    pivots, order = sparse_rref(rows)
    basis = []
    for f in range(total):
        if f in pivots:
            continue
        vec = {f: SC_ONE}
        for c in order:
            v = pivots[c].get(f)
            if v is not None and v != 0:
                vec[c] = Scalar.of(-v)
        mat = zeros(nr, nc)
        for k, val in vec.items():
            mat[k // nc][k % nc] = Scalar.of(val)
        basis.append(mat)
    return basis


def invariant_form(g):
    """Killing form kappa(x_i, x_j) = trace(ad x_i ad x_j); exact, symmetric.

    Raises DegenerateForm when singular (non-semisimple input).
    """
    ad = g.adjoint()
    n = g.dim
    kappa = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            prod = mat_mul(ad.matrices[i], ad.matrices[j])
            tr = sum((prod[t][t] for t in range(n)), SC_ZERO)
            kappa[i][j] = tr
            kappa[j][i] = tr
    rows = []
    for i in range(n):
        row = {j: kappa[i][j] for j in range(n) if kappa[i][j]}
        if row:
            rows.append(row)
    _, order = sparse_rref(rows)
    if len(order) != n:
        raise DegenerateForm("Killing form is singular")
    return kappa


# ----------------------------------------------------------------------
# Structure-constants files
# ----------------------------------------------------------------------


def to_file_dict(g, reps=None):
    data = {
        "name": g.name,
        "dim": g.dim,
        "basis": list(g.basis_names),
        "brackets": [
            [i, j, k, str(c)]
            for (i, j) in sorted(g.brackets)
            if i < j
            for k, c in sorted(g.brackets[(i, j)].items())
        ],
        "reps": {},
    }
    for rep in reps or ():
        data["reps"][rep.name] = {
            "dim": rep.dim,
            "matrices": {
                g.basis_names[i]: [[str(c) for c in row] for row in rep.matrices[i]]
                for i in range(g.dim)
            },
        }
    return data


def from_file_dict(data):
    """Build (LieAlgebra, {name: Representation}) from the JSON file format.

    The loader enforces antisymmetry, Jacobi and bracket compatibility
    and rejects on the first failure with the violated triple.
    """
    names = data["basis"]
    if len(names) != data["dim"]:
        raise StructureError("dim does not match the basis list")
    brackets = {}
    for i, j, k, c in data["brackets"]:
        comps = brackets.setdefault((i, j), {})
        comps[k] = parse_scalar(c)
        rev = brackets.setdefault((j, i), {})
        rev[k] = -parse_scalar(c)
    g = LieAlgebra(data.get("name", "g"), names, brackets)
    reps = {}
    for rname, rdata in data.get("reps", {}).items():
        mats = [rdata["matrices"][bname] for bname in names]
        mats = [[[parse_scalar(c) for c in row] for row in m] for m in mats]
        reps[rname] = Representation(g, rdata["dim"], mats, name=rname)
    return g, reps


def load_structure_file(path):
    with open(path) as fh:
        return from_file_dict(json.load(fh))


_BUILTIN_CACHE = {}


def builtin_algebra(tag):
    """Algebra + named reps for the CLI tags "sl2" and "sl3"."""
    if tag in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[tag]
    if tag == "sl2":
        g = sl2()
        reps = {f"V{m}": sl2_irrep_over(g, m) for m in range(0, 7)}
        reps["adj"] = reps["V2"]
    elif tag == "sl3":
        g = sl3()
        fund = sl3_fundamental(g)
        reps = {
            "fund": fund,
            "adj": g.adjoint(),
            "dualfund": dual_rep(fund, name="dualfund"),
        }
        reps["sym2dual"] = sym_square(reps["dualfund"], name="sym2dual")
    else:
        raise KeyError(f"unknown built-in algebra {tag!r}")
    _BUILTIN_CACHE[tag] = (g, reps)
    return g, reps


def sl2_irrep_over(g, m):
    """sl2_irrep rebased onto an existing sl2 instance (shared identity)."""
    rep = sl2_irrep(m)
    return Representation(g, rep.dim, rep.matrices, name=rep.name, check=False)
