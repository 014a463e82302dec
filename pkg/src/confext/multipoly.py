"""Sparse polynomials in the formal indeterminates D (= the module map
usually written as a derivation), L and M (the two series variables),
with coefficients that are affine-linear forms in named unknowns, plus
the identity-to-linear-system reduction and an exact sparse nullspace.

A functional-equation identity such as

    (D + a + w*L) f(D, L)  -  ...  =  (L - M) f(D, L + M)

is represented as an MPoly that must vanish identically: collecting the
coefficient of every monomial yields one homogeneous linear equation in
the unknown coefficients of f.  Unknowns only ever enter linearly;
multiplying two unknown-laden polynomials raises NonlinearProduct.

Monomial order is graded-lex with D > L > M, used for canonical
printing and for the reduced-row-echelon normal form of solution bases.
"""

from __future__ import annotations

from .exactnum import RAT, Scalar, SC_ONE, SC_ZERO

VARS = ("D", "L", "M")
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}


class NonlinearProduct(ArithmeticError):
    """Product of two polynomials that both carry unknowns."""


class UnknownIndeterminate(KeyError):
    """Substitution target is not one of D, L, M."""


class NonhomogeneousSystem(ValueError):
    """An identity has a nonzero constant part: the ansatz is malformed."""


class LinearForm:
    """Affine-linear form  const + sum coeff_u * u  over named unknowns."""

    __slots__ = ("const", "terms")

    def __init__(self, const=SC_ZERO, terms=None):
        self.const = const if isinstance(const, Scalar) else Scalar.of(const)
        self.terms = {}
        if terms:
            for name, c in terms.items():
                c = c if isinstance(c, Scalar) else Scalar.of(c)
                if c:
                    self.terms[name] = c

    @staticmethod
    def unknown(name, coeff=SC_ONE):
        return LinearForm(SC_ZERO, {name: coeff})

    def is_zero(self):
        return not self.const and not self.terms

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for name, c in other.terms.items():
            s = terms.get(name, SC_ZERO) + c
            if s:
                terms[name] = s
            else:
                terms.pop(name, None)
        out = LinearForm.__new__(LinearForm)
        out.const = self.const + other.const
        out.terms = terms
        return out

    def __neg__(self):
        out = LinearForm.__new__(LinearForm)
        out.const = -self.const
        out.terms = {n: -c for n, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return LF_ZERO
        out = LinearForm.__new__(LinearForm)
        out.const = self.const * s
        out.terms = {n: c * s for n, c in self.terms.items()}
        return out

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and self.const == other.const
            and self.terms == other.terms
        )

    def __str__(self):
        bits = [] if not self.const else [str(self.const)]
        for name in sorted(self.terms):
            bits.append(f"{self.terms[name]}*{name}")
        return " + ".join(bits) if bits else "0"


LF_ZERO = LinearForm()


def _grlex_key(expo):
    return (sum(expo), expo)


class MPoly:
    """Sparse polynomial in a fixed subset of (D, L, M) over LinearForm."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=VARS, terms=None):
        for v in vars:
            if v not in _VAR_INDEX:
                raise UnknownIndeterminate(v)
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            for expo, lf in terms.items():
                if not isinstance(lf, LinearForm):
                    lf = LinearForm(lf)
                if lf:
                    self.terms[tuple(expo)] = lf

    # -- constructors --------------------------------------------------

    @staticmethod
    def constant(c, vars=VARS):
        c = c if isinstance(c, Scalar) else Scalar.of(c)
        z = (0,) * len(vars)
        return MPoly(vars, {z: LinearForm(c)} if c else None)

    @staticmethod
    def var(name, vars=VARS):
        expo = [0] * len(vars)
        expo[vars.index(name)] = 1
        return MPoly(vars, {tuple(expo): LinearForm(SC_ONE)})

    @staticmethod
    def unknown(name, vars=VARS):
        z = (0,) * len(vars)
        return MPoly(vars, {z: LinearForm.unknown(name)})

    # -- structure -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def has_unknowns(self):
        return any(lf.terms for lf in self.terms.values())

    def unknown_names(self):
        names = set()
        for lf in self.terms.values():
            names.update(lf.terms)
        return names

    def degree(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    # -- arithmetic ----------------------------------------------------

    def _check_vars(self, other):
        if self.vars != other.vars:
            raise UnknownIndeterminate(
                f"variable sets differ: {self.vars} vs {other.vars}"
            )

    def __add__(self, other):
        self._check_vars(other)
        terms = dict(self.terms)
        for expo, lf in other.terms.items():
            s = terms.get(expo)
            s = lf if s is None else s + lf
            if s:
                terms[expo] = s
            else:
                terms.pop(expo, None)
        out = MPoly.__new__(MPoly)
        out.vars = self.vars
        out.terms = terms
        return out

    def __neg__(self):
        out = MPoly.__new__(MPoly)
        out.vars = self.vars
        out.terms = {e: -lf for e, lf in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = s if isinstance(s, Scalar) else Scalar.of(s)
        out = MPoly.__new__(MPoly)
        out.vars = self.vars
        out.terms = {}
        if s:
            for e, lf in self.terms.items():
                out.terms[e] = lf.scale(s)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ in ("mpq", "Fraction"):
            return self.scale(other)
        self._check_vars(other)
        if self.has_unknowns() and other.has_unknowns():
            raise NonlinearProduct("both factors carry unknowns")
        # keep the unknown-free factor on the left for scaling
        left, right = (other, self) if self.has_unknowns() else (self, other)
        out = {}
        for e1, lf1 in left.terms.items():
            c1 = lf1.const
            for e2, lf2 in right.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                add = lf2.scale(c1)
                cur = out.get(expo)
                cur = add if cur is None else cur + add
                if cur:
                    out[expo] = cur
                else:
                    out.pop(expo, None)
        res = MPoly.__new__(MPoly)
        res.vars = self.vars
        res.terms = out
        return res

    __rmul__ = __mul__

    def pow_int(self, n):
        out = MPoly.constant(SC_ONE, self.vars)
        for _ in range(n):
            out = out * self
        return out

    # -- substitution ---------------------------------------------------

    def substitute(self, name, expr):
        """Substitute an unknown-free polynomial for the indeterminate name."""
        if name not in self.vars:
            raise UnknownIndeterminate(name)
        if expr.has_unknowns():
            raise NonlinearProduct("substitution expression carries unknowns")
        self._check_vars(expr)
        i = self.vars.index(name)
        powers = {0: MPoly.constant(SC_ONE, self.vars)}

        def power(n):
            if n not in powers:
                powers[n] = power(n - 1) * expr
            return powers[n]

        out = MPoly(self.vars)
        for expo, lf in self.terms.items():
            e = expo[i]
            rest = list(expo)
            rest[i] = 0
            base = MPoly(self.vars, {tuple(rest): lf})
            out = out + (base * power(e) if e else base)
        return out

    def shift(self, name, offset):
        """Substitute name -> name + offset, offset an unknown-free MPoly or Scalar."""
        if isinstance(offset, (int, Scalar)):
            off = MPoly.constant(offset, self.vars)
        else:
            off = offset
        return self.substitute(name, MPoly.var(name, self.vars) + off)

    def eval_unknowns(self, assignment, default=SC_ZERO):
        """Replace unknowns by scalars; returns an unknown-free MPoly."""
        out = MPoly(self.vars)
        for expo, lf in self.terms.items():
            val = lf.const
            for name, c in lf.terms.items():
                val = val + c * assignment.get(name, default)
            if val:
                out.terms[expo] = LinearForm(val)
        return out

    def coefficient_map(self):
        """Monomial -> LinearForm, keys sorted graded-lex descending."""
        return {e: self.terms[e] for e in sorted(self.terms, key=_grlex_key, reverse=True)}

    # -- text form -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for expo in sorted(self.terms, key=_grlex_key, reverse=True):
            lf = self.terms[expo]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, expo) if e
            )
            if lf.is_constant():
                c = lf.const
                coef = str(c) if (c != SC_ONE or not mono) else ""
            else:
                coef = f"({lf})"
            if coef and mono:
                bits.append(f"{coef}*{mono}")
            else:
                bits.append(coef or mono)
        return " + ".join(bits)

    __repr__ = __str__


def poly_ops():
    """Names of the supported polynomial operations (for discoverability)."""
    return ("add", "sub", "mul", "scale", "substitute", "shift")


# ----------------------------------------------------------------------
# Linear systems and exact sparse elimination
# ----------------------------------------------------------------------


class LinearSystem:
    """Homogeneous system: one row per (identity, monomial) pair."""

    def __init__(self, columns, rows, labels):
        self.columns = list(columns)
        self.rows = rows  # list of dicts col_index -> Scalar
        self.labels = labels

    @property
    def ncols(self):
        return len(self.columns)


def to_linear_system(identities, columns=None, labels=None):
    """Collect monomial coefficients of identities into a LinearSystem.

    Every identity must vanish identically; a nonzero constant
    (unknown-free) part raises NonhomogeneousSystem.  `columns`, when
    given, fixes the full unknown list (so unknowns that cancel out of
    every identity still get a column); otherwise the union of unknown
    names is used, sorted lexicographically.
    """
    if columns is None:
        names = set()
        for ident in identities:
            names.update(ident.unknown_names())
        columns = sorted(names)
    col_index = {n: i for i, n in enumerate(columns)}
    rows, row_labels = [], []
    for k, ident in enumerate(identities):
        label = labels[k] if labels else f"identity-{k}"
        for expo in sorted(ident.terms, key=_grlex_key, reverse=True):
            lf = ident.terms[expo]
            if lf.const:
                raise NonhomogeneousSystem(
                    f"{label}: monomial {expo} has constant part {lf.const}"
                )
            row = {}
            for name, c in lf.terms.items():
                if name not in col_index:
                    raise KeyError(f"unknown {name} missing from column list")
                row[col_index[name]] = c
            if row:
                rows.append(row)
                row_labels.append((label, expo))
    return LinearSystem(columns, rows, row_labels)


def _scalar_rows(rows):
    return any(
        isinstance(c, Scalar) and c.d != 0 for row in rows for c in row.values()
    )


def _to_fast_row(row):
    """Rational row -> integer row (cleared denominators, gcd-reduced)."""
    from math import gcd, lcm

    vals = {k: (c.a if isinstance(c, Scalar) else c) for k, c in row.items()}
    den = 1
    for c in vals.values():
        den = lcm(den, int(c.denominator))
    out = {}
    g = 0
    for k, c in vals.items():
        v = int(c * den)
        if v:
            out[k] = v
            g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _combine_int(row, pivot, col):
    """row := a*row - b*pivot with the col entry eliminated; gcd-normalized."""
    from math import gcd

    a = pivot[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {}
    for k, v in row.items():
        out[k] = v * a
    for k, v in pivot.items():
        w = out.get(k, 0) - v * b
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    if out and out[min(out)] < 0:
        out = {k: -v for k, v in out.items()}
    return out

def _combine_scalar(row, pivot, col):
    ratio = row[col] / pivot[col]
    out = dict(row)
    for k, v in pivot.items():
        w = out.get(k, SC_ZERO) - v * ratio
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def sparse_rref(rows, exact_scalars=None):
    """Reduced row echelon form of sparse rows (dicts col -> coeff).

    Returns (pivots, order) where pivots maps pivot column -> reduced
    row with that column as its minimum support and entry 1 (rows over
    mpq) and order is the sorted pivot column list.  Works over plain
    rationals (fast integer path) or Scalar entries.
    """
    scalar_mode = _scalar_rows(rows) if exact_scalars is None else exact_scalars
    if scalar_mode:
        work = [{k: Scalar.of(v) for k, v in r.items()} for r in rows if r]
        combine = _combine_scalar

        def normalize(row):
            lead = min(row)
            inv = row[lead].inverse()
            return {k: v * inv for k, v in row.items()}

    else:
        work = [_to_fast_row(r) for r in rows if r]
        combine = _combine_int

        def normalize(row):
            lead = row[min(row)]
            return {k: RAT(v, lead) for k, v in row.items()}

    work = [r for r in work if r]
    work.sort(key=lambda r: (len(r), tuple(sorted(r))))
    pivots = {}
    for row in work:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            row = combine(row, piv, c)
    # back-substitution for full RREF
    order = sorted(pivots)
    for i in range(len(order) - 1, -1, -1):
        c = order[i]
        row = pivots[c]
        for j in range(i):
            cj = order[j]
            other = pivots[cj]
            if c in other:
                pivots[cj] = combine(other, row, c)
    return {c: normalize(r) for c, r in pivots.items()}, order


def reduce_vector(vec, pivots, track=None):
    """Reduce a (col -> coeff) vector against an RREF pivot set.

    Entries of `pivots` must be normalized (pivot entry 1).  If `track`
    maps pivot columns to combination records, returns (residual, used)
    where used lists (pivot_col, coefficient).  Coefficients are exact.
    """
    vec = dict(vec)
    used = []
    while vec:
        c = min(vec)
        piv = pivots.get(c)
        if piv is None:
            break
        coef = vec[c]
        for k, v in piv.items():
            w = vec.get(k, SC_ZERO if isinstance(coef, Scalar) else RAT(0)) - coef * v
            if w:
                vec[k] = w
            else:
                vec.pop(k, None)
        used.append((c, coef))
    if track is not None:
        return vec, used
    return vec


def nullspace(system):
    """Exact basis of the solution space of a homogeneous LinearSystem.

    Basis vectors are returned as assignments (unknown name -> Scalar)
    in reduced-row-echelon normal form: each has value 1 at its free
    column, 0 at the other free columns, and the columns are ordered
    lexicographically by unknown name.
    """
    ncols = system.ncols
    if ncols == 0:
        return []
    pivots, order = sparse_rref(system.rows)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free_cols:
        assignment = {system.columns[f]: SC_ONE}
        for c in order:
            v = pivots[c].get(f)
            if v is not None and v != 0:
                nv = -v
                assignment[system.columns[c]] = nv if isinstance(nv, Scalar) else Scalar(nv)
        basis.append(assignment)
    return basis
