"""Automorphisms and derivations, generic checkers and apex-specific residuals.

The classification fact machine-verified here: for the apex algebra of
dimension n, automorphisms are exactly the block matrices diag(Q, 1) with
Q orthogonal of size n-1, and derivations are exactly diag(S, 0) with S
skew-symmetric, i.e. the orthogonal group and its Lie algebra acting on the
hyperplane while fixing or killing the apex vector.

Residual systems: writing the candidate's column j as v_j + a_j b_n (v_j
the hyperplane part, a_j the apex coefficient), multiplicativity or the
Leibniz rule on each basis pair (x, y) reduces to named scalar equations.
Residual names use 1-based indices and encode the pair type: `jj` for two
hyperplane vectors, `jn`/`nj` when the apex is the right/left factor, `nn`
for apex times apex; suffix `_v(...)[k]` is the k-th hyperplane coordinate
of the defect, `_s(...)` its apex coordinate.
"""

from __future__ import annotations

from . import linalg as la
from .algebras import Algebra, is_apex_algebra
from .errors import CapError, DimensionError
from .fields import Field, make_field
from .linalg import Matrix, Subspace
from .parallel import run_chunks
from .reports import CheckReport, residual_report

__all__ = [
    "automorphism_orthogonal_correspondence", "automorphism_residual_report",
    "automorphism_residuals", "derivation_algebra", "derivation_matrices",
    "derivation_residual_report", "derivation_residuals",
    "derivation_skew_correspondence", "embed_orthogonal", "embed_skew",
    "enumerate_automorphisms", "enumerate_orthogonal", "is_automorphism",
    "is_derivation",
]


# -------------------------------------------------------- generic checkers

def is_automorphism(A: Algebra, phi: Matrix) -> CheckReport:
    """phi preserves products and is invertible.

    details splits the verdict: `multiplicative` is the bilinear identity
    phi(x)phi(y) = phi(xy) on basis pairs, `invertible` the rank condition;
    witness is the first failing basis pair (1-based), if any.
    """
    _check_shape(A, phi)
    F = A.field
    cols = la.transpose(phi)
    witness = None
    multiplicative = True
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.multiply(cols[i], cols[j])
            rhs = la.mat_vec(F, phi, A.basis_product(i, j))
            if lhs != rhs:
                multiplicative = False
                witness = (i + 1, j + 1)
                break
        if not multiplicative:
            break
    invertible = la.is_invertible(F, phi)
    return CheckReport(multiplicative and invertible, witness=witness,
                       details={"multiplicative": multiplicative,
                                "invertible": invertible})


def is_derivation(A: Algebra, d: Matrix) -> CheckReport:
    """Leibniz rule d(xy) = d(x)y + x d(y) on basis pairs."""
    _check_shape(A, d)
    F = A.field
    cols = la.transpose(d)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = la.mat_vec(F, d, A.basis_product(i, j))
            rhs = la.vadd(F, A.multiply(cols[i], A.basis(j)),
                          A.multiply(A.basis(i), cols[j]))
            if lhs != rhs:
                return CheckReport(False, witness=(i + 1, j + 1))
    return CheckReport(True)


def derivation_algebra(A: Algebra) -> Subspace:
    """All derivations of A, as a subspace of F^(dim^2) (matrices flattened
    row-major).  Kernel of the linear system the Leibniz rule induces."""
    F = A.field
    n = A.dim
    rows = []
    for i in range(n):
        for j in range(n):
            prod = A.basis_product(i, j)
            for k in range(n):
                row = [F.zero] * (n * n)
                for m in range(n):
                    # d(e_i e_j) contributes c_ij^m d_km
                    row[k * n + m] = F.add(row[k * n + m], prod[m])
                    # d(e_i) e_j contributes -d_mi c_mj^k
                    row[m * n + i] = F.sub(row[m * n + i],
                                           A.basis_product(m, j)[k])
                    # e_i d(e_j) contributes -d_mj c_im^k
                    row[m * n + j] = F.sub(row[m * n + j],
                                           A.basis_product(i, m)[k])
                rows.append(tuple(row))
    return la.kernel(F, tuple(rows), ncols=n * n)


def derivation_matrices(A: Algebra) -> tuple[Matrix, ...]:
    """Canonical basis of the derivation algebra, reshaped to matrices."""
    n = A.dim
    return tuple(tuple(flat[r * n:(r + 1) * n] for r in range(n))
                 for flat in derivation_algebra(A).basis)


# ------------------------------------------------------- residual systems

def automorphism_residuals(A: Algebra, phi: Matrix) -> list[tuple[str, object]]:
    """Named scalar equations equivalent to multiplicativity of phi on the
    apex algebra; all zero iff phi preserves every basis product.

    Invertibility is deliberately not encoded (phi = 0 solves the system).
    """
    _check_apex(A, phi)
    F = A.field
    n = A.dim
    a = n - 1
    v = lambda k, j: phi[k][j]
    alpha = lambda j: phi[a][j]
    col = la.transpose(phi)
    hyp = lambda j: col[j][:a]
    two = F.from_int(2)
    out = []
    for i in range(a):
        for j in range(a):
            for k in range(a):
                if i == j:
                    out.append((f"jj_v({i + 1},{j + 1})[{k + 1}]",
                                F.sub(F.mul(alpha(i), v(k, i)), v(k, a))))
                else:
                    out.append((f"jj_v({i + 1},{j + 1})[{k + 1}]",
                                F.mul(alpha(i), v(k, j))))
            s = F.add(la.dot(F, hyp(i), hyp(j)),
                      F.mul(two, F.mul(alpha(i), alpha(j))))
            if i == j:
                s = F.sub(s, alpha(a))
            out.append((f"jj_s({i + 1},{j + 1})", s))
    for i in range(a):
        for k in range(a):
            out.append((f"jn_v({i + 1})[{k + 1}]", F.mul(alpha(i), v(k, a))))
        out.append((f"jn_s({i + 1})",
                    F.add(la.dot(F, hyp(i), hyp(a)),
                          F.mul(two, F.mul(alpha(a), alpha(i))))))
    for j in range(a):
        for k in range(a):
            out.append((f"nj_v({j + 1})[{k + 1}]",
                        F.sub(F.mul(alpha(a), v(k, j)), v(k, j))))
        out.append((f"nj_s({j + 1})",
                    F.sub(F.add(la.dot(F, hyp(a), hyp(j)),
                                F.mul(two, F.mul(alpha(a), alpha(j)))),
                          alpha(j))))
    for k in range(a):
        out.append((f"nn_v[{k + 1}]",
                    F.sub(F.mul(alpha(a), v(k, a)), F.mul(two, v(k, a)))))
    out.append(("nn_s",
                F.sub(F.add(la.dot(F, hyp(a), hyp(a)),
                            F.mul(two, F.mul(alpha(a), alpha(a)))),
                      F.mul(two, alpha(a)))))
    return out


def derivation_residuals(A: Algebra, d: Matrix) -> list[tuple[str, object]]:
    """Named scalar equations equivalent to the Leibniz rule for d on the
    apex algebra; all zero iff d is a derivation."""
    _check_apex(A, d)
    F = A.field
    n = A.dim
    a = n - 1
    w = lambda k, j: d[k][j]
    gamma = lambda j: d[a][j]
    two = F.from_int(2)
    out = []
    for i in range(a):
        for j in range(a):
            for k in range(a):
                if i == j:
                    val = F.sub(gamma(i) if k == i else F.zero, w(k, a))
                else:
                    val = gamma(i) if k == j else F.zero
                out.append((f"jj_v({i + 1},{j + 1})[{k + 1}]", val))
            if i == j:
                out.append((f"jj_s({i + 1},{j + 1})",
                            F.sub(F.mul(two, w(i, i)), gamma(a))))
            else:
                out.append((f"jj_s({i + 1},{j + 1})", F.add(w(i, j), w(j, i))))
    for i in range(a):
        out.append((f"jn_s({i + 1})",
                    F.add(w(i, a), F.mul(two, gamma(i)))))
    for j in range(a):
        for k in range(a):
            out.append((f"nj_v({j + 1})[{k + 1}]",
                        gamma(a) if k == j else F.zero))
        out.append((f"nj_s({j + 1})", F.add(w(j, a), gamma(j))))
    for k in range(a):
        out.append((f"nn_v[{k + 1}]", w(k, a)))
    out.append(("nn_s", F.mul(two, gamma(a))))
    return out


def automorphism_residual_report(A: Algebra, phi: Matrix) -> CheckReport:
    return residual_report(A.field, automorphism_residuals(A, phi))


def derivation_residual_report(A: Algebra, d: Matrix) -> CheckReport:
    return residual_report(A.field, derivation_residuals(A, d))


# ------------------------------------------------ block embeddings, oracles

def embed_orthogonal(F: Field, Q: Matrix, dim: int) -> Matrix:
    """diag(Q, 1) for an orthogonal (dim-1)-matrix Q: the block shape every
    automorphism of the apex algebra must take."""
    _check_block(F, Q, dim)
    if not la.is_orthogonal(F, Q):
        raise ValueError("block is not orthogonal")
    return _embed(F, Q, dim, F.one)


def embed_skew(F: Field, S: Matrix, dim: int) -> Matrix:
    """diag(S, 0) for a skew-symmetric (dim-1)-matrix S with zero diagonal."""
    _check_block(F, S, dim)
    if not la.is_skew_symmetric(F, S):
        raise ValueError("block is not skew-symmetric")
    if any(S[i][i] != F.zero for i in range(dim - 1)):
        raise ValueError("block has a nonzero diagonal entry")
    return _embed(F, S, dim, F.zero)


def _embed(F: Field, B: Matrix, dim: int, corner) -> Matrix:
    m = dim - 1
    rows = [tuple(B[r]) + (F.zero,) for r in range(m)]
    rows.append((F.zero,) * m + (corner,))
    return tuple(rows)


def enumerate_orthogonal(F: Field, m: int, cap: int = 10 ** 7) -> list[Matrix]:
    """All orthogonal m x m matrices over a finite field, canonical order."""
    return [M for M in la.enumerate_matrices(F, m, m, cap=cap)
            if la.is_orthogonal(F, M)]


def enumerate_automorphisms(A: Algebra, cap: int = 10 ** 7,
                            workers: int = 1) -> list[Matrix]:
    """All automorphisms of A over a finite field, by exhaustive scan of the
    full matrix space, in canonical enumeration order."""
    F = A.field
    if not F.is_finite:
        raise CapError("automorphism enumeration requires a finite field")
    total = F.order ** (A.dim * A.dim)
    if total > cap:
        raise CapError(f"{total} candidate matrices exceed cap {cap}")
    return run_chunks(_automorphism_chunk,
                      (F.descriptor(), A.to_json()), total, workers)


def _automorphism_chunk(args) -> list[Matrix]:
    field_desc, algebra_json, start, stop = args
    F = make_field(field_desc)
    A = Algebra.from_json(algebra_json, field=F)
    elems = list(F.elements())
    out = []
    for index in range(start, stop):
        phi = la.decode_matrix(F, A.dim, A.dim, index, elems)
        if _multiplicative(A, phi) and la.is_invertible(F, phi):
            out.append(phi)
    return out


def _multiplicative(A: Algebra, phi: Matrix) -> bool:
    F = A.field
    cols = la.transpose(phi)
    for i in range(A.dim):
        for j in range(A.dim):
            if A.multiply(cols[i], cols[j]) != la.mat_vec(F, phi,
                                                          A.basis_product(i, j)):
                return False
    return True


# -------------------------------------------------- classification checks

def automorphism_orthogonal_correspondence(A: Algebra, cap: int = 10 ** 7,
                                           workers: int = 1) -> CheckReport:
    """The automorphisms of the apex algebra are exactly the embedded
    orthogonal matrices diag(Q, 1): checked as set equality between the
    exhaustive automorphism scan and the independent orthogonal scan."""
    if not is_apex_algebra(A):
        raise DimensionError("correspondence check expects the apex table")
    F = A.field
    found = enumerate_automorphisms(A, cap=cap, workers=workers)
    expected = [embed_orthogonal(F, Q, A.dim)
                for Q in enumerate_orthogonal(F, A.dim - 1, cap=cap)]
    key = lambda M: la.matrix_sort_key(F, M)
    found_sorted = sorted(found, key=key)
    expected_sorted = sorted(expected, key=key)
    ok = found_sorted == expected_sorted
    witness = None
    if not ok:
        found_set, expected_set = set(found), set(expected)
        extra = sorted(found_set - expected_set, key=key)
        missing = sorted(expected_set - found_set, key=key)
        witness = {"unexpected": extra[:3], "missing": missing[:3]}
    return CheckReport(ok, witness=witness,
                       details={"automorphisms": len(found),
                                "orthogonal": len(expected)})


def derivation_skew_correspondence(A: Algebra) -> CheckReport:
    """The derivation algebra of the apex algebra is exactly the embedded
    skew-symmetric matrices diag(S, 0): checked as equality of canonical
    subspaces of F^(dim^2), plus the expected dimension count."""
    if not is_apex_algebra(A):
        raise DimensionError("correspondence check expects the apex table")
    F = A.field
    n = A.dim
    m = n - 1
    found = derivation_algebra(A)
    gens = []
    for i in range(m):
        for j in range(i + 1, m):
            flat = [F.zero] * (n * n)
            flat[i * n + j] = F.one
            flat[j * n + i] = F.neg(F.one)
            gens.append(tuple(flat))
    expected = la.span(F, n * n, gens)
    ok = (found == expected and found.dim == m * (m - 1) // 2)
    shapes_ok = all(_has_skew_block_shape(F, M) for M in derivation_matrices(A))
    return CheckReport(ok and shapes_ok,
                       details={"dim": found.dim,
                                "expected_dim": m * (m - 1) // 2,
                                "block_shapes": shapes_ok})


def _has_skew_block_shape(F: Field, M: Matrix) -> bool:
    n = len(M)
    border = all(M[n - 1][j] == F.zero for j in range(n)) and \
        all(M[i][n - 1] == F.zero for i in range(n))
    block = tuple(row[:n - 1] for row in M[:n - 1])
    return border and la.is_skew_symmetric(F, block) and \
        all(block[i][i] == F.zero for i in range(n - 1))


# ----------------------------------------------------------------- shared

def _check_shape(A: Algebra, M: Matrix) -> None:
    if len(M) != A.dim or any(len(row) != A.dim for row in M):
        raise DimensionError("matrix shape does not match the algebra")


def _check_block(F: Field, B: Matrix, dim: int) -> None:
    m = dim - 1
    if len(B) != m or any(len(row) != m for row in B):
        raise DimensionError(f"block must be {m} x {m}")


def _check_apex(A: Algebra, M: Matrix) -> None:
    _check_shape(A, M)
    if not is_apex_algebra(A):
        raise DimensionError("residual systems are specific to the apex table")
