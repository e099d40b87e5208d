"""Finite Coxeter groups in an exact reflection representation.

A group is stored as the closure of its simple reflections together with
a W-invariant Gram matrix ``gram`` on h.  Coordinates are chosen so that all
entries are rational for the crystallographic types; the remaining
dihedral groups live over Q(2cos(pi/k)).

Conventions:

* a root ``r`` is a vector in h; its linear form is ``alpha(x) = (G r) . x``
* group elements act on points by ``x -> w x`` and on functions by
  ``(w.f)(x) = f(w^-1 x)``
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property, reduce

from .errors import TheoremViolation, UsageError
from .exact.linalg import det, inverse, matmul, matvec, rank, transpose
from .exact.poly import MultiPoly, linear_substitute
from .exact.scalars import FieldElement, dihedral_field, scalar_str, to_float
from .exact.univariate import RationalFunction, UPoly, one_minus_t_power

SUPPORTED = "A1, A2, A3, B2, B3, I2(k) for 3 <= k <= 12"

F = Fraction


def _tuplify(m):
    return tuple(tuple(row) for row in m)


def _reflection_matrix(r, gram):
    n = len(r)
    gr = matvec(gram, r)
    rr = sum((a * b for a, b in zip(r, gr)), F(0))
    return _tuplify([[F(int(i == j)) - 2 * r[i] * gr[j] / rr for j in range(n)] for i in range(n)])


def _normalize_sign(v):
    for x in v:
        if x:
            return tuple(v) if to_float(x) > 0 else tuple(-y for y in v)
    raise ValueError("zero root")


def _proportionality(u, v):
    """lam with u = lam * v, or None."""
    lam = None
    for a, b in zip(u, v):
        if b:
            q = a / b
            if lam is None:
                lam = q
            elif q != lam:
                return None
        elif a:
            return None
    return lam


def _char_poly_det(w):
    """det(1 - t w) as a UPoly."""
    n = len(w)
    mat = [[UPoly([F(int(i == j)), -w[i][j]]) for j in range(n)] for i in range(n)]

    def laplace(m):
        if len(m) == 1:
            return m[0][0]
        out = UPoly()
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * laplace(minor)
            out = out + term if j % 2 == 0 else out - term
        return out

    return laplace(mat)


class CoxeterDatum:
    """A finite reflection group with roots, orbits, classes and invariant degrees."""

    def __init__(self, name, gram, simple_roots, degrees, field=None):
        self.name = name
        self.field = field
        self.gram = _tuplify(gram)
        self.rank = len(gram)
        self.degrees = tuple(sorted(degrees))
        self.simple_roots = [tuple(r) for r in simple_roots]
        self._generate()
        self._find_reflections()
        self._find_orbits()
        self._find_classes()
        self._validate()

    # ------------------------------------------------------------------ build
    def _generate(self):
        n = self.rank
        ident = _tuplify([[F(int(i == j)) for j in range(n)] for i in range(n)])
        gens = [_reflection_matrix(r, self.gram) for r in self.simple_roots]
        self.generators = gens
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = _tuplify(matmul(g, s))
                    if h not in index:
                        index[h] = len(elements)
                        elements.append(h)
                        nxt.append(h)
                        if len(elements) > 10000:
                            raise UsageError("group too large")
            frontier = nxt
        self.elements = elements
        self.index = index
        self.identity = 0
        self.mult = [[index[_tuplify(matmul(a, b))] for b in elements] for a in elements]
        self.inv = [row.index(0) for row in self.mult]
        self.generator_indices = [index[g] for g in gens]

    def _find_reflections(self):
        # roots are the W-orbit of the simple roots; one root per reflection
        by_matrix = {}
        for w in self.elements:
            for r in self.simple_roots:
                root = _normalize_sign(matvec(w, r))
                s = _reflection_matrix(root, self.gram)
                by_matrix.setdefault(s, root)
        refl = sorted(self.index[s] for s in by_matrix)
        self.reflections = refl
        self.roots = [by_matrix[self.elements[i]] for i in refl]
        self.root_forms = [tuple(matvec(self.gram, r)) for r in self.roots]
        self.root_norms = [sum((a * b for a, b in zip(r, f)), F(0))
                           for r, f in zip(self.roots, self.root_forms)]
        self.reflection_position = {e: k for k, e in enumerate(refl)}

    def _find_orbits(self):
        parent = list(range(len(self.reflections)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k, s in enumerate(self.reflections):
            for w in self.generator_indices:
                t = self.mult[self.mult[w][s]][self.inv[w]]
                a, b = find(k), find(self.reflection_position[t])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for k in range(len(self.reflections)):
            groups.setdefault(find(k), []).append(k)
        self.orbits = [groups[k] for k in sorted(groups)]
        self.orbit_of = {}
        for o, members in enumerate(self.orbits):
            for k in members:
                self.orbit_of[k] = o

    def _find_classes(self):
        seen = {}
        classes = []
        for g in range(len(self.elements)):
            if g in seen:
                continue
            cls = sorted({self.mult[self.mult[w][g]][self.inv[w]] for w in range(len(self.elements))})
            for h in cls:
                seen[h] = len(classes)
            classes.append(cls)
        self.classes = classes
        self.class_of = [seen[g] for g in range(len(self.elements))]

    def _validate(self):
        order = len(self.elements)
        if math.prod(self.degrees) != order:
            raise TheoremViolation(f"{self.name}: |W| = {order} but prod(d_i) = {math.prod(self.degrees)}")
        if sum(len(c) for c in self.classes) != order:
            raise TheoremViolation("conjugacy classes do not partition W")
        for w in self.elements:
            if _tuplify(matmul(matmul(transpose(w), self.gram), w)) != self.gram:
                raise TheoremViolation("Gram matrix is not W-invariant")
        if not self.molien_matches_degrees():
            raise TheoremViolation(f"{self.name}: Molien series does not match degrees {self.degrees}")

    # ------------------------------------------------------------------ queries
    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_reflections(self) -> int:
        return len(self.reflections)

    def reflection_matrix(self, k: int):
        return self.elements[self.reflections[k]]

    def root_form_poly(self, k: int) -> MultiPoly:
        return MultiPoly.linear_form(list(self.root_forms[k]))

    def orbit_values(self, per_orbit) -> list:
        """Expand one value per orbit into one value per reflection."""
        per_orbit = list(per_orbit)
        if len(per_orbit) != len(self.orbits):
            raise UsageError(
                f"{self.name} has {len(self.orbits)} reflection orbit(s); got {len(per_orbit)} value(s)")
        return [per_orbit[self.orbit_of[k]] for k in range(self.n_reflections)]

    def act(self, w: int, p: MultiPoly) -> MultiPoly:
        """(w.p)(x) = p(w^-1 x)."""
        return linear_substitute(p, self.elements[self.inv[w]])

    def compose_with(self, p: MultiPoly, w: int) -> MultiPoly:
        """p(w x)."""
        return linear_substitute(p, self.elements[w])

    @cached_property
    def gram_inverse(self):
        return _tuplify(inverse(self.gram))

    @cached_property
    def quadratic_invariant(self) -> MultiPoly:
        """|x|^2 = x^T G x, the degree-2 invariant."""
        n = self.rank
        out = MultiPoly(n)
        for i in range(n):
            for j in range(n):
                if self.gram[i][j]:
                    out = out + MultiPoly.var(n, i) * MultiPoly.var(n, j) * self.gram[i][j]
        return out

    @cached_property
    def root_action(self):
        """For each element w: s -> (t, lam) with alpha_s(w x) = lam * alpha_t(x)."""
        table = []
        for w in self.elements:
            wt = transpose(w)
            row = []
            for a in self.root_forms:
                img = matvec(wt, a)
                for t, b in enumerate(self.root_forms):
                    lam = _proportionality(img, b)
                    if lam is not None:
                        row.append((t, lam))
                        break
                else:
                    raise TheoremViolation("root form image is not proportional to a root form")
            table.append(row)
        return table

    @cached_property
    def reflection_frames(self):
        """Per reflection: x = T y with y1 = alpha_s(x) and s acting as y1 -> -y1."""
        frames = []
        n = self.rank
        for r, a in zip(self.roots, self.root_forms):
            ar = sum((x * y for x, y in zip(a, r)), F(0))
            cols = [[x / ar for x in r]]
            piv = next(i for i, c in enumerate(a) if c)
            for i in range(n):
                if i != piv:
                    v = [F(0)] * n
                    v[i] = F(1)
                    v[piv] = -a[i] / a[piv]
                    cols.append(v)
            frames.append(_tuplify(transpose(cols)))
        return frames

    def det_one_minus_tw(self, w: int) -> UPoly:
        return _char_poly_det(self.elements[w])

    @cached_property
    def class_det_polys(self):
        return [self.det_one_minus_tw(cls[0]) for cls in self.classes]

    @cached_property
    def degree_denominator(self) -> UPoly:
        return reduce(lambda a, b: a * b, [one_minus_t_power(d) for d in self.degrees], UPoly.one())

    def molien_series(self) -> RationalFunction:
        acc = RationalFunction(UPoly())
        for cls, dp in zip(self.classes, self.class_det_polys):
            acc = acc + RationalFunction(UPoly([F(len(cls))]), dp)
        return acc * F(1, self.order)

    def molien_matches_degrees(self) -> bool:
        """(1/|W|) sum_w 1/det(1 - t w) == prod 1/(1 - t^d_i), exactly."""
        den = self.degree_denominator
        total = UPoly()
        for cls, dp in zip(self.classes, self.class_det_polys):
            q, r = den.divmod(dp)
            if r:
                return self.molien_series() == RationalFunction(UPoly.one(), den)
            total = total + q * len(cls)
        return total == UPoly([F(self.order)])

    @cached_property
    def sign_values(self):
        return [det(self.elements[c[0]]) for c in self.classes]

    @cached_property
    def character_table(self) -> "CharacterTable":
        from .characters import character_table
        return character_table(self)

    def matrix_text(self, m):
        return [[scalar_str(x) for x in row] for row in m]

    def to_json(self) -> dict:
        ct = self.character_table
        return {
            "group": self.name,
            "rank": self.rank,
            "order": self.order,
            "field": self.field.to_json() if self.field else "Q",
            "gram": self.matrix_text(self.gram),
            "degrees": list(self.degrees),
            "elements": [self.matrix_text(w) for w in self.elements],
            "reflections": self.reflections,
            "roots": [[scalar_str(x) for x in r] for r in self.roots],
            "root_forms": [self.root_form_poly(k).to_text() for k in range(self.n_reflections)],
            "reflection_orbits": self.orbits,
            "classes": self.classes,
            "character_table": {
                "labels": ct.labels,
                "class_sizes": [len(c) for c in self.classes],
                "values": [[scalar_str(v) for v in row] for row in ct.values],
            },
        }

    def __repr__(self):
        return f"CoxeterDatum({self.name}, |W|={self.order})"


# ---------------------------------------------------------------------- types

_I2 = re.compile(r"^I2\((\d+)\)$")


def _crystallographic(name):
    if name == "A1":
        return [[F(1)]], [[F(1)]], [2]
    if name == "A2":
        # metric x1^2 + 3 x2^2; roots at 60 degree spacing
        return [[F(1), F(0)], [F(0), F(3)]], [[F(2), F(0)], [F(-1), F(1)]], [2, 3]
    if name == "A3":
        # D3 realization: roots e_i +- e_j in orthonormal coordinates
        eye = [[F(int(i == j)) for j in range(3)] for i in range(3)]
        return eye, [[F(1), F(-1), F(0)], [F(0), F(1), F(-1)], [F(0), F(1), F(1)]], [2, 3, 4]
    if name == "B2":
        eye = [[F(1), F(0)], [F(0), F(1)]]
        return eye, [[F(1), F(-1)], [F(0), F(1)]], [2, 4]
    if name == "B3":
        eye = [[F(int(i == j)) for j in range(3)] for i in range(3)]
        return eye, [[F(1), F(-1), F(0)], [F(0), F(1), F(-1)], [F(0), F(0), F(1)]], [2, 4, 6]
    if name == "G2":
        return [[F(1), F(0)], [F(0), F(3)]], [[F(2), F(0)], [F(-3), F(1)]], [2, 6]
    return None


_CACHE: dict[str, CoxeterDatum] = {}


def canonical_name(spec: str) -> str:
    s = spec.strip().upper().replace(" ", "")
    m = _I2.match(s)
    if m:
        return f"I2({int(m.group(1))})"
    return s


def build_group(spec: str) -> CoxeterDatum:
    """Construct a supported Coxeter group from its type string."""
    name = canonical_name(spec)
    if name in _CACHE:
        return _CACHE[name]
    data = None
    field = None
    m = _I2.match(name)
    if name in ("A1", "A2", "A3", "B2", "B3"):
        data = _crystallographic(name)
    elif m:
        k = int(m.group(1))
        if not 3 <= k <= 12:
            raise UsageError(f"unsupported group {spec!r}; supported: {SUPPORTED}")
        if k == 3:
            data = _crystallographic("A2")
        elif k == 4:
            data = _crystallographic("B2")
        elif k == 6:
            data = _crystallographic("G2")
        else:
            field = dihedral_field(k)
            theta = field.gen
            two = field(2)
            gram = [[two, -theta], [-theta, two]]
            roots = [[field(1), field(0)], [field(0), field(1)]]
            data = (gram, roots, [2, k])
    if data is None:
        raise UsageError(f"unsupported group {spec!r}; supported: {SUPPORTED}")
    gram, roots, degrees = data
    W = CoxeterDatum(name, gram, roots, degrees, field=field)
    _CACHE[name] = W
    return W


def reflection_orbits(W: CoxeterDatum):
    """Partition of the reflections (by position) under conjugation."""
    return [list(o) for o in W.orbits]
