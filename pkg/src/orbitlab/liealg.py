"""Finite-dimensional Lie algebras with exact structure constants.

The ambient norm is ``norm_scale * euclidean`` on coordinates, with
``norm_scale`` calibrated so the bracket is submultiplicative:
``|[u,v]| <= |u| |v|``.  Every operation runs exactly when its inputs are
ints/Fractions and in floating point otherwise.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import exact


def _is_exact_scalar(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def is_exact_vector(v):
    return all(_is_exact_scalar(x) for x in v)


def as_float(v):
    return np.asarray([float(x) for x in v], dtype=float)


@dataclass
class GVector:
    """A vector of the ambient algebra in basis coordinates."""

    algebra: "LieAlgebraModel"
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")
        self.coords = tuple(self.coords)

    @property
    def exact(self):
        return is_exact_vector(self.coords)


def coords_of(v):
    """Accept a GVector or a raw coordinate sequence."""
    if isinstance(v, GVector):
        return list(v.coords)
    return list(v)


class LieAlgebraModel:
    """Lie algebra given by an exact rank-3 structure tensor.

    structure holds sparse triplets c[i][j][k] with
    [e_i, e_j] = sum_k c[i][j][k] e_k, stored as {(i, j): [(k, Fraction)]}.
    """

    def __init__(self, dim, structure, basis_names=None, rational_lattice=None,
                 sl2_triple=None, matrix_basis=None, norm_scale=None,
                 validate=True):
        self.dim = int(dim)
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        self.structure = {}
        for (i, j), terms in structure.items():
            terms = [(k, Fraction(c)) for k, c in terms if Fraction(c) != 0]
            if terms:
                self.structure[(i, j)] = terms
        self.basis_names = list(basis_names) if basis_names else [
            f"e{i}" for i in range(self.dim)]
        self.rational_lattice = (
            [[Fraction(x) for x in row] for row in rational_lattice]
            if rational_lattice is not None
            else [[Fraction(int(i == j)) for j in range(self.dim)]
                  for i in range(self.dim)])
        self.sl2_triple = None
        if sl2_triple is not None:
            E, H, F = sl2_triple
            self.sl2_triple = ([Fraction(x) for x in E],
                               [Fraction(x) for x in H],
                               [Fraction(x) for x in F])
        self.matrix_basis = matrix_basis

        self._dense = np.zeros((self.dim, self.dim, self.dim))
        for (i, j), terms in self.structure.items():
            for k, c in terms:
                self._dense[i, j, k] = float(c)

        if norm_scale is None:
            unfold = self._dense.reshape(self.dim * self.dim, self.dim).T
            s = np.linalg.svd(unfold, compute_uv=False)
            norm_scale = float(s[0]) if s.size and s[0] > 0 else 1.0
        self.norm_scale = float(norm_scale)
        if self.norm_scale <= 0:
            raise ValueError("norm_scale must be positive")

        self._killing_gram = None
        self._weight_proj = None
        if validate:
            self._validate()

    # -- construction checks -------------------------------------------------

    def _validate(self):
        for (i, j), terms in self.structure.items():
            flipped = dict(self.structure.get((j, i), []))
            for k, c in terms:
                if flipped.get(k, Fraction(0)) != -c:
                    raise ValueError("structure constants are not antisymmetric")
        for i in range(self.dim):
            for k, c in self.structure.get((i, i), []):
                if c != 0:
                    raise ValueError("[e_i, e_i] must vanish")
        basis = exact.identity(self.dim)
        for a, b, c in combinations(range(self.dim), 3):
            x, y, z = basis[a], basis[b], basis[c]
            s = self._add(self.bracket(self.bracket(x, y), z),
                          self._add(self.bracket(self.bracket(y, z), x),
                                    self.bracket(self.bracket(z, x), y)))
            if any(t != 0 for t in s):
                raise ValueError("Jacobi identity fails on basis triple "
                                 f"({a},{b},{c})")
        for u in self.rational_lattice:
            for v in self.rational_lattice:
                w = self.bracket(u, v)
                if exact.solve_with_integer_coefficients(self.rational_lattice, w) is None:
                    raise ValueError("lattice is not closed under the bracket")
        # With norm_scale at least the unfolding spectral bound this holds;
        # kept as a guard for user-supplied scales.
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.norm(self.bracket(basis[i], basis[j]))
                if lhs > self.norm(basis[i]) * self.norm(basis[j]) * (1 + 1e-12):
                    raise ValueError("norm is not submultiplicative on the basis")

    @staticmethod
    def _add(u, v):
        return [a + b for a, b in zip(u, v)]

    # -- basic operations ----------------------------------------------------

    def bracket(self, x, y):
        """[x, y] from the structure tensor; exact when both inputs are."""
        xc, yc = coords_of(x), coords_of(y)
        if len(xc) != self.dim or len(yc) != self.dim:
            raise ValueError("dimension mismatch")
        if is_exact_vector(xc) and is_exact_vector(yc):
            out = [Fraction(0)] * self.dim
            for (i, j), terms in self.structure.items():
                f = Fraction(xc[i]) * Fraction(yc[j])
                if f:
                    for k, c in terms:
                        out[k] += f * c
            return out
        return np.einsum("i,j,ijk->k", as_float(xc), as_float(yc), self._dense)

    def inner(self, u, v):
        uc, vc = coords_of(u), coords_of(v)
        s = self.norm_scale ** 2
        return s * float(np.dot(as_float(uc), as_float(vc)))

    def norm(self, v):
        return self.norm_scale * float(np.linalg.norm(as_float(coords_of(v))))

    def adjoint_matrix(self, x):
        """Matrix of ad x in the e_i basis: column j holds [x, e_j]."""
        xc = coords_of(x)
        if is_exact_vector(xc):
            A = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for (i, j), terms in self.structure.items():
                if xc[i]:
                    for k, c in terms:
                        A[k][j] += Fraction(xc[i]) * c
            return A
        return np.einsum("i,ijk->kj", as_float(xc), self._dense)

    def killing_gram(self):
        """Exact Gram matrix B[i][j] = trace(ad e_i ∘ ad e_j)."""
        if self._killing_gram is None:
            basis = exact.identity(self.dim)
            ads = [self.adjoint_matrix(b) for b in basis]
            gram = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for j in range(i, self.dim):
                    t = sum(ads[i][a][b] * ads[j][b][a]
                            for a in range(self.dim) for b in range(self.dim))
                    gram[i][j] = gram[j][i] = t
            self._killing_gram = gram
        return self._killing_gram

    def killing_form(self, x, y):
        xc, yc = coords_of(x), coords_of(y)
        if len(xc) != self.dim or len(yc) != self.dim:
            raise ValueError("dimension mismatch")
        gram = self.killing_gram()
        if is_exact_vector(xc) and is_exact_vector(yc):
            return sum(Fraction(xc[i]) * gram[i][j] * Fraction(yc[j])
                       for i in range(self.dim) for j in range(self.dim))
        G = np.array([[float(g) for g in row] for row in gram])
        return float(as_float(xc) @ G @ as_float(yc))

    # -- sl2 weight decomposition ---------------------------------------------

    def _weight_projection(self):
        """Exact projection onto ker(ad E) along im(ad F).

        For any finite-dimensional sl2-module V = ker(e) ⊕ im(f): ker(e) is
        the span of the highest-weight vectors and im(f) the sum of the
        remaining weight spaces.
        """
        if self._weight_proj is not None:
            return self._weight_proj
        if self.sl2_triple is None:
            raise ValueError("sl2 triple is not set")
        E, _, F = self.sl2_triple
        adE = self.adjoint_matrix(E)
        adF = self.adjoint_matrix(F)
        ker = exact.rational_kernel(adE)
        cols = exact.transpose(adF)
        _, pivots = exact.rref(cols)
        img = [cols[p] for p in pivots]
        if len(ker) + len(img) != self.dim:
            raise ValueError("ker(ad E) ⊕ im(ad F) does not span; triple invalid")
        M = exact.transpose(ker + img)      # columns: ker basis then im basis
        Minv = exact.invert(M)
        P0 = [[sum(M[i][t] * Minv[t][j] for t in range(len(ker)))
               for j in range(self.dim)] for i in range(self.dim)]
        self._weight_proj = P0
        return P0

    def weight_decompose(self, r):
        """Split r = r0 + r1 with r0 in the u(t)-fixed subspace."""
        rc = coords_of(r)
        P0 = self._weight_projection()
        if is_exact_vector(rc):
            r0 = exact.mat_vec(P0, [Fraction(x) for x in rc])
            r1 = [a - b for a, b in zip(rc, r0)]
            return r0, r1
        P = np.array([[float(x) for x in row] for row in P0])
        r0 = P @ as_float(rc)
        return r0, as_float(rc) - r0

    # -- invariant complement --------------------------------------------------

    def invariant_complement(self, h_frame, tol=1e-10):
        """Killing-orthogonal complement r of a subalgebra h; checks [h, r] ⊆ r."""
        vectors = h_frame.vectors if isinstance(h_frame, SubspaceFrame) else list(h_frame)
        vecs = [coords_of(v) for v in vectors]
        if not vecs:
            raise ValueError("empty frame")
        if not all(is_exact_vector(v) for v in vecs):
            raise ValueError("invariant_complement expects an exact frame")
        gram = self.killing_gram()
        restricted = [[sum(Fraction(u[i]) * gram[i][j] * Fraction(v[j])
                           for i in range(self.dim) for j in range(self.dim))
                       for v in vecs] for u in vecs]
        if exact.det_exact(restricted) == 0:
            raise ValueError("Killing form restricted to the frame is degenerate")
        rows = [exact.mat_vec(gram, [Fraction(x) for x in v]) for v in vecs]
        comp = exact.rational_kernel(rows)
        frame = SubspaceFrame(self, comp, exact_mode=True)
        for h in vecs:
            for c in comp:
                w = self.bracket(h, c)
                if frame.distance_to_span(w) > tol:
                    raise ValueError("complement is not ad(h)-invariant")
        return frame

    # -- matrix realization ----------------------------------------------------

    def to_matrix(self, v):
        if self.matrix_basis is None:
            raise ValueError("no matrix realization attached")
        vc = coords_of(v)
        n = len(self.matrix_basis[0])
        if is_exact_vector(vc):
            M = [[Fraction(0)] * n for _ in range(n)]
            for c, B in zip(vc, self.matrix_basis):
                if c:
                    for a in range(n):
                        for b in range(n):
                            M[a][b] += Fraction(c) * B[a][b]
            return M
        M = np.zeros((n, n))
        for c, B in zip(vc, self.matrix_basis):
            M += float(c) * np.array([[float(x) for x in row] for row in B])
        return M

    def from_matrix(self, M):
        """Coordinates of a matrix in the basis (exact for exact input)."""
        if self.matrix_basis is None:
            raise ValueError("no matrix realization attached")
        n = len(self.matrix_basis[0])
        cols = [[B[a][b] for B in self.matrix_basis]
                for a in range(n) for b in range(n)]
        rhs = [Fraction(M[a][b]) if _is_exact_scalar(M[a][b]) else Fraction(float(M[a][b]))
               for a in range(n) for b in range(n)]
        sol = exact.solve_exact(cols, rhs)
        if sol is None:
            raise ValueError("matrix is not in the span of the basis")
        return sol

    def ad_group(self, g):
        """Ad(g) as a dim×dim matrix, for g in the attached matrix realization."""
        if self.matrix_basis is None:
            raise ValueError("no matrix realization attached")
        g = [[Fraction(x) for x in row] for row in g]
        ginv = exact.invert(g)
        cols = []
        for B in self.matrix_basis:
            gBg = exact.mat_mul(exact.mat_mul(g, [list(map(Fraction, r)) for r in B]), ginv)
            cols.append(self.from_matrix(gBg))
        return exact.transpose(cols)

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        triplets = [[i, j, k, str(c)]
                    for (i, j), terms in sorted(self.structure.items())
                    for k, c in terms]
        doc = {
            "dim": self.dim,
            "basis_names": self.basis_names,
            "structure_constants": triplets,
            "lattice_basis": [[str(x) for x in row] for row in self.rational_lattice],
        }
        if self.sl2_triple is not None:
            doc["sl2_triple"] = [[str(x) for x in v] for v in self.sl2_triple]
        return doc

    @classmethod
    def from_json(cls, doc):
        structure = {}
        for i, j, k, c in doc["structure_constants"]:
            structure.setdefault((int(i), int(j)), []).append((int(k), Fraction(c)))
        lattice = ([[Fraction(x) for x in row] for row in doc["lattice_basis"]]
                   if "lattice_basis" in doc else None)
        triple = None
        if "sl2_triple" in doc:
            triple = tuple([Fraction(x) for x in v] for v in doc["sl2_triple"])
        return cls(doc["dim"], structure, basis_names=doc.get("basis_names"),
                   rational_lattice=lattice, sl2_triple=triple)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


class SubspaceFrame:
    """Basis of a subspace of the algebra, orthonormal unless exact_mode.

    closure_defect is recomputed on each access: the maximum distance of a
    frame-pair bracket to the span, in the algebra norm.
    """

    def __init__(self, algebra, vectors, exact_mode=False, check=True):
        self.algebra = algebra
        self.vectors = [coords_of(v) for v in vectors]
        self.exact_mode = bool(exact_mode)
        if check and not self.exact_mode and self.vectors:
            M = np.array([as_float(v) for v in self.vectors])
            gram = (algebra.norm_scale ** 2) * (M @ M.T)
            if np.abs(gram - np.eye(len(self.vectors))).max() > 1e-12:
                raise ValueError("frame is not orthonormal in the algebra norm")

    def __len__(self):
        return len(self.vectors)

    @property
    def dim(self):
        return len(self.vectors)

    def matrix(self):
        return np.array([as_float(v) for v in self.vectors]) if self.vectors \
            else np.zeros((0, self.algebra.dim))

    def distance_to_span(self, v):
        """Distance of v to the span, in the algebra norm."""
        vc = as_float(coords_of(v))
        if not self.vectors:
            return self.algebra.norm_scale * float(np.linalg.norm(vc))
        M = self.matrix()
        coef, *_ = np.linalg.lstsq(M.T, vc, rcond=None)
        return self.algebra.norm_scale * float(np.linalg.norm(vc - M.T @ coef))

    @property
    def closure_defect(self):
        worst = 0.0
        for i in range(len(self.vectors)):
            for j in range(i + 1, len(self.vectors)):
                w = self.algebra.bracket(self.vectors[i], self.vectors[j])
                worst = max(worst, self.distance_to_span(w))
        return worst

    def contains(self, v, tol=1e-9):
        return self.distance_to_span(v) <= tol


def orthonormalize(algebra, vectors, tol=1e-12):
    """Gram-Schmidt in the algebra norm; drops near-dependent vectors."""
    s2 = algebra.norm_scale ** 2
    out = []
    for v in vectors:
        w = as_float(coords_of(v)).copy()
        for u in out:
            w = w - s2 * np.dot(u, w) * u
        n = algebra.norm_scale * np.linalg.norm(w)
        if n > tol:
            out.append(w / n)
    return SubspaceFrame(algebra, out)


# -- built-in algebras ----------------------------------------------------------


def _sl_basis(n):
    """Elementary-matrix basis of sl_n: upper E_ij (i<j), then H_k, then lower."""
    mats, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            B = [[Fraction(0)] * n for _ in range(n)]
            B[i][j] = Fraction(1)
            mats.append(B)
            names.append(f"E{i+1}{j+1}")
    for k in range(n - 1):
        B = [[Fraction(0)] * n for _ in range(n)]
        B[k][k] = Fraction(1)
        B[k + 1][k + 1] = Fraction(-1)
        mats.append(B)
        names.append(f"H{k+1}")
    for j in range(n):
        for i in range(j + 1, n):
            B = [[Fraction(0)] * n for _ in range(n)]
            B[i][j] = Fraction(1)
            mats.append(B)
            names.append(f"E{i+1}{j+1}")
    return mats, names


def _commutator(A, B):
    n = len(A)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = sum(A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(n))
    return out


def sl(n, sl2_triple=None):
    """sl_n with the elementary-matrix basis and its integral lattice."""
    mats, names = _sl_basis(n)
    dim = len(mats)
    flat = [[B[a][b] for a in range(n) for b in range(n)] for B in mats]
    cols = exact.transpose(flat)

    def coords(M):
        v = exact.solve_exact(cols, [M[a][b] for a in range(n) for b in range(n)])
        assert v is not None
        return v

    structure = {}
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            terms = [(k, c) for k, c in enumerate(coords(_commutator(mats[i], mats[j]))) if c != 0]
            if terms:
                structure[(i, j)] = terms
    return LieAlgebraModel(dim, structure, basis_names=names,
                           sl2_triple=sl2_triple, matrix_basis=mats)


def _unit(dim, idx, c=1):
    v = [Fraction(0)] * dim
    v[idx] = Fraction(c)
    return v


def sl2():
    """sl_2 in the (E, H, F) basis with its defining triple."""
    E, H, F = _unit(3, 0), _unit(3, 1), _unit(3, 2)
    return sl(2, sl2_triple=(E, H, F))


def sl3_block():
    """sl_3 carrying the upper-left block sl_2 triple (E12, H1, E21)."""
    a = sl(3)
    names = a.basis_names
    E = _unit(8, names.index("E12"))
    H = _unit(8, names.index("H1"))
    F = _unit(8, names.index("E21"))
    return sl(3, sl2_triple=(E, H, F))


def sl3_principal():
    """sl_3 with the principal (irreducible) sl_2 triple.

    E = E12 + E23, H = diag(2, 0, -2), F = 2 E21 + 2 E32; the image of the
    corresponding SL2 preserves a signature-(2,1) symmetric form.
    """
    a = sl(3)
    names = a.basis_names
    E = [Fraction(0)] * 8
    E[names.index("E12")] = Fraction(1)
    E[names.index("E23")] = Fraction(1)
    H = [Fraction(0)] * 8
    H[names.index("H1")] = Fraction(2)
    H[names.index("H2")] = Fraction(2)
    F = [Fraction(0)] * 8
    F[names.index("E21")] = Fraction(2)
    F[names.index("E32")] = Fraction(2)
    return sl(3, sl2_triple=(E, H, F))


def sl4():
    return sl(4)


def block_sl2_frame(algebra):
    """Exact basis of the upper-left block sl2 inside sl(3)."""
    names = algebra.basis_names
    vecs = [_unit(algebra.dim, names.index(nm)) for nm in ("E12", "H1", "E21")]
    return SubspaceFrame(algebra, vecs, exact_mode=True)


def so21_frame(algebra):
    """Exact basis of so(2,1) = {X : X^t J + J X = 0}, J = diag(1,1,-1), in sl(3)."""
    names = algebra.basis_names
    d = algebra.dim
    v1 = [Fraction(0)] * d
    v1[names.index("E12")] = Fraction(1)
    v1[names.index("E21")] = Fraction(-1)
    v2 = [Fraction(0)] * d
    v2[names.index("E13")] = Fraction(1)
    v2[names.index("E31")] = Fraction(1)
    v3 = [Fraction(0)] * d
    v3[names.index("E23")] = Fraction(1)
    v3[names.index("E32")] = Fraction(1)
    return SubspaceFrame(algebra, [v1, v2, v3], exact_mode=True)
