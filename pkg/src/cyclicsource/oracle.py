"""Brute-force matrix oracle over the prime field F_p.

Every closed form in `modules` and `dade` is certified against explicit
matrices: a module is realized as the action of a chosen generator, and its
isomorphism type is recovered from the rank sequence r_s = rank((A - I)^s),
since the number of Jordan blocks of size >= s+1 equals r_s - r_{s+1}.

Jordan types of unipotent matrices are insensitive to field extension, so
the prime field stands in for the algebraically closed coefficient field.

All matrices are numpy int64 arrays with entries reduced mod p.  Products
are taken through float64 BLAS where the exactness bound allows it (always,
for the sizes admitted by the capacity check).
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import GroupSpec
from .modules import ModuleSum, _check_group

DEFAULT_CAPACITY = 1 << 20  # matrix entries (dim^2)
CAPACITY_ENV = "CYCLICSOURCE_ORACLE_CAP"


class OracleCapacityError(ValueError):
    pass


class NotCappedError(ValueError):
    pass


def capacity_limit(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAPACITY_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_CAPACITY


def check_capacity(dim: int, cap: int | None = None) -> None:
    limit = capacity_limit(cap)
    if dim * dim > limit:
        raise OracleCapacityError(
            f"oracle capacity exceeded: {dim}x{dim} matrix needs "
            f"{dim * dim} entries, limit is {limit}"
        )


# ---------------------------------------------------------------------------
# exact linear algebra mod p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 is exact up to 2^53; entries are < p and the inner dimension
    # is capped, so products never lose precision at oracle sizes.
    inner = a.shape[1]
    assert inner * (p - 1) ** 2 < 2**53
    out = (a.astype(np.float64) @ b.astype(np.float64)) % p
    return out.astype(np.int64)


def matpow_mod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            result = matmul_mod(result, base, p)
        base = matmul_mod(base, base, p)
        e >>= 1
    return result


def column_space(a: np.ndarray, p: int) -> np.ndarray:
    """A basis (as columns) of the column space of `a` mod p.

    Column elimination sweeping left to right; only columns right of the
    pivot are cleared, which is enough for a basis and keeps every update on
    one contiguous slice.
    """
    a = a % p
    m, n = a.shape
    # The 2D slice is never reduced mod p inside the loop: pivot column and
    # pivot row are reduced as 1D vectors, so each update changes an entry
    # by less than p^2 and magnitudes stay below m*p^2, well inside int64.
    col = 0
    for row in range(m):
        if col >= n:
            break
        head = a[row, col:] % p
        nz = np.nonzero(head)[0]
        if nz.size == 0:
            continue
        j = col + nz[0]
        if j != col:
            a[:, [col, j]] = a[:, [j, col]]
            head[[0, j - col]] = head[[j - col, 0]]
        inv = pow(int(head[0]), p - 2, p)
        factors = (head[1:] * inv) % p
        if factors.size:
            pivot_col = a[:, col] % p
            np.subtract(
                a[:, col + 1 :], np.outer(pivot_col, factors), out=a[:, col + 1 :]
            )
        col += 1
    return a[:, :col] % p


def rank_mod(a: np.ndarray, p: int) -> int:
    return column_space(a, p).shape[1]


def nullspace_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nullspace basis of `a` mod p, as columns.

    The basis is in the standard RREF form: the rows indexed by the returned
    free-column list carry an identity block, so coordinates of any vector in
    the nullspace with respect to this basis can be read off those rows.
    """
    a = a % p
    m, n = a.shape
    a = a.copy()
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + nz[0]
        if i != row:
            a[[row, i]] = a[[i, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row] = (a[row] * inv) % p
        others = np.concatenate([np.arange(row), np.arange(row + 1, m)])
        if others.size:
            factors = a[others, col]
            a[others] = (a[others] - np.outer(factors, a[row])) % p
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        basis[c, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-a[r, c]) % p
    return basis, free


# ---------------------------------------------------------------------------
# matrix modules


@dataclass(frozen=True, eq=False)
class MatrixModule:
    """A module given by the explicit action of the generator of the group."""

    group: GroupSpec
    action: np.ndarray  # dim x dim over F_p

    def __post_init__(self) -> None:
        a = np.asarray(self.action, dtype=np.int64) % self.group.p
        object.__setattr__(self, "action", a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("generator action must be a square matrix")

    @property
    def dim(self) -> int:
        return self.action.shape[0]

    def check_wellformed(self, cap: int | None = None) -> None:
        """(A - I)^(p^ell) must vanish, i.e. A is unipotent of p-power order."""
        check_capacity(self.dim, cap)
        n = (self.action - np.eye(self.dim, dtype=np.int64)) % self.group.p
        if np.any(matpow_mod(n, self.group.order, self.group.p)):
            raise ValueError("generator action is not unipotent of p-power order")


def _shift_block(n: int, p: int) -> np.ndarray:
    """Unipotent lower-shift Jordan block: I + N with N e_t = e_{t+1}."""
    a = np.eye(n, dtype=np.int64)
    if n > 1:
        a += np.eye(n, k=-1, dtype=np.int64)
    return a % p


def realize(m: ModuleSum, cap: int | None = None) -> MatrixModule:
    """Block-diagonal matrix realization of a Jordan-size multiset."""
    check_capacity(m.dim, cap)
    dim = m.dim
    a = np.zeros((dim, dim), dtype=np.int64)
    pos = 0
    for n in m.parts:
        a[pos : pos + n, pos : pos + n] = _shift_block(n, m.group.p)
        pos += n
    if dim == 0:
        a = np.zeros((0, 0), dtype=np.int64)
    return MatrixModule(m.group, a)


def rank_profile(n_mat: np.ndarray, p: int,
                 max_steps: int | None = None) -> list[int]:
    """[rank(N), rank(N^2), ...] down to the last non-zero power.

    Computed through the chain of images N^s(V) = N(N^{s-1}(V)): each step
    multiplies N into the current column basis and re-reduces, so the cost
    shrinks with the rank.  A non-nilpotent N never reaches rank zero, so
    callers that cannot guarantee nilpotency must bound the chain.
    """
    ranks: list[int] = []
    basis = column_space(n_mat, p)
    while basis.shape[1] > 0:
        if max_steps is not None and len(ranks) >= max_steps:
            raise ValueError(
                f"matrix is not nilpotent within {max_steps} steps"
            )
        ranks.append(basis.shape[1])
        basis = column_space(matmul_mod(n_mat, basis, p), p)
    return ranks


def jordan_type(m: MatrixModule, cap: int | None = None) -> ModuleSum:
    """Jordan block sizes of the generator action, from the rank sequence."""
    check_capacity(m.dim, cap)
    dim = m.dim
    if dim == 0:
        return ModuleSum(m.group, ())
    n_mat = (m.action - np.eye(dim, dtype=np.int64)) % m.group.p
    try:
        profile = rank_profile(n_mat, m.group.p, max_steps=m.group.order)
    except ValueError as exc:
        raise ValueError(
            "generator action is not unipotent of p-power order"
        ) from exc
    ranks = [dim] + profile + [0]
    parts: list[int] = []
    # ranks[s] - ranks[s+1] blocks have size >= s+1
    for s in range(len(ranks) - 1):
        at_least = ranks[s] - ranks[s + 1]
        exactly = at_least - (ranks[s + 1] - ranks[s + 2] if s + 2 < len(ranks) else 0)
        parts.extend([s + 1] * exactly)
    out = ModuleSum(m.group, tuple(parts))
    assert out.dim == dim
    return out


# ---------------------------------------------------------------------------
# oracle operations on ModuleSums


@lru_cache(maxsize=4096)
def _tensor_pair(p: int, ell: int, n1: int, n2: int, limit: int) -> tuple[int, ...]:
    group = GroupSpec(p, ell)
    a = realize(ModuleSum(group, (n1,)), limit)
    b = realize(ModuleSum(group, (n2,)), limit)
    check_capacity(n1 * n2, limit)
    kron = np.kron(a.action, b.action) % p
    return jordan_type(MatrixModule(group, kron), limit).parts


def tensor_decompose(a: ModuleSum, b: ModuleSum, cap: int | None = None) -> ModuleSum:
    """Jordan type of the tensor product with diagonal generator action.

    No closed form is trusted here: each pair of parts goes through an
    explicit Kronecker product and the rank-sequence decomposition, with
    results cached per (p, ell, n1, n2).
    """
    _check_group(a, b)
    limit = capacity_limit(cap)
    parts: list[int] = []
    for n1 in a.parts:
        for n2 in b.parts:
            lo, hi = sorted((n1, n2))
            parts.extend(_tensor_pair(a.group.p, a.group.ell, lo, hi, limit))
    return ModuleSum(a.group, tuple(parts))


def restrict_oracle(m: ModuleSum, i: int, cap: int | None = None) -> ModuleSum:
    """Restriction to D_i computed on explicit matrices: the generator of
    D_i acts as the p^(ell-i)-th power of the realized action."""
    if not 0 <= i <= m.group.ell:
        raise ValueError(f"subgroup index {i} out of range 0..{m.group.ell}")
    mat = realize(m, cap)
    power = matpow_mod(mat.action, m.group.p ** (m.group.ell - i), m.group.p)
    return jordan_type(MatrixModule(m.group.subgroup(i), power), cap)


def induced_action(part: int, sub: GroupSpec, group: GroupSpec,
                   cap: int | None = None) -> MatrixModule:
    """Explicit matrix of the induced module Ind_{D_i}^D J_part.

    Basis g^j (x) e_t with j < q = [D : D_i]; the generator shifts j and
    wraps through the action of g^q = generator of D_i on J_part.
    """
    if sub.p != group.p or sub.ell > group.ell:
        raise ValueError(f"{sub} is not a subgroup of {group}")
    if not 1 <= part <= sub.order:
        raise ValueError(f"part {part} exceeds subgroup order {sub.order}")
    q = group.p ** (group.ell - sub.ell)
    dim = part * q
    check_capacity(dim, cap)
    block = _shift_block(part, group.p)
    a = np.zeros((dim, dim), dtype=np.int64)
    eye = np.eye(part, dtype=np.int64)
    for j in range(q - 1):
        a[(j + 1) * part : (j + 2) * part, j * part : (j + 1) * part] = eye
    # the wrap-around factor is the action of g^q, the generator of D_i
    a[0:part, (q - 1) * part : q * part] = block
    return MatrixModule(group, a)


def induce_oracle(m: ModuleSum, to: GroupSpec, cap: int | None = None) -> ModuleSum:
    """Induction computed on the explicit block matrices, part by part."""
    parts: list[int] = []
    for n in m.parts:
        mod = induced_action(n, m.group, to, cap)
        parts.extend(jordan_type(mod, cap).parts)
    return ModuleSum(to, tuple(parts))


def _counter_subtract(big: Counter, small: Counter) -> tuple[int, ...]:
    out = big.copy()
    out.subtract(small)
    if any(v < 0 for v in out.values()):
        raise AssertionError("multiset subtraction went negative")
    return tuple(out.elements())


def _uniserial_kernel_type(m: int, n: int, group: GroupSpec,
                           cap: int | None = None) -> tuple[int, ...]:
    """Jordan type of the kernel of the quotient surjection J_m -> J_n.

    With the lower-shift basis e_0..e_{m-1}, the span of e_n..e_{m-1} is the
    kernel submodule; the generator action restricted to it is decomposed by
    the rank sequence.
    """
    if m == n:
        return ()
    mat = realize(ModuleSum(group, (m,)), cap).action
    sub = mat[n:, n:]
    return jordan_type(MatrixModule(group, sub), cap).parts


@lru_cache(maxsize=None)
def _induced_jordan(p: int, ell: int, i: int, a: int, limit: int) -> tuple[int, ...]:
    group = GroupSpec(p, ell)
    mod = induced_action(a, group.subgroup(i), group, limit)
    return jordan_type(mod, limit).parts


@lru_cache(maxsize=None)
def _restricted_jordan(p: int, ell: int, i: int, n: int, limit: int) -> tuple[int, ...]:
    group = GroupSpec(p, ell)
    return restrict_oracle(ModuleSum(group, (n,)), i, limit).parts


@lru_cache(maxsize=None)
def _rel_heller_part(p: int, ell: int, n: int, i: int, limit: int) -> tuple[int, ...]:
    group = GroupSpec(p, ell)
    ind_parts: list[int] = []
    for a in _restricted_jordan(p, ell, i, n, limit):
        ind_parts.extend(_induced_jordan(p, ell, i, a, limit))
    candidates = [x for x in ind_parts if x >= n]
    if not candidates:
        raise AssertionError("induced-restricted module admits no cover")
    cover = min(candidates)
    if cover == n:
        return ()  # relatively projective part
    return _uniserial_kernel_type(cover, n, group, limit)


def relative_heller_oracle(m: ModuleSum, i: int, cap: int | None = None) -> ModuleSum:
    """Kernel of the minimal relatively D_i-projective cover, by matrices.

    Per part J_n: restrict to D_i by explicit matrix power, induce each
    restricted part back up through explicit block matrices, decompose the
    result by rank sequences, pick the smallest summand J_m admitting a
    surjection onto J_n (m >= n), and decompose the kernel of the explicit
    quotient surjection J_m ->> J_n.  Induction over a direct sum is block
    diagonal, so assembling the induced-restricted module summand-wise is
    structural, not a closed form.
    """
    if not 0 <= i <= m.group.ell:
        raise ValueError(f"subgroup index {i} out of range 0..{m.group.ell}")
    limit = capacity_limit(cap)
    out: list[int] = []
    for n in m.parts:
        out.extend(_rel_heller_part(m.group.p, m.group.ell, n, i, limit))
    return ModuleSum(m.group, tuple(out))


class _IncrementalBasis:
    """Grow a column basis mod p one vector at a time, keeping the pivot
    rows in identity form so membership reduction is a single matvec."""

    def __init__(self, dim: int, p: int):
        self.p = p
        self.cols = np.zeros((dim, 0), dtype=np.int64)
        self.pivot_rows: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v % self.p
        if self.pivot_rows:
            coords = v[self.pivot_rows]
            v = (v - self.cols @ coords) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Add the vector if independent; return whether it was new."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        row = int(nz[0])
        v = (v * pow(int(v[row]), self.p - 2, self.p)) % self.p
        if self.cols.shape[1]:
            self.cols = (self.cols - np.outer(v, self.cols[row, :])) % self.p
        self.cols = np.hstack([self.cols, v[:, None]])
        self.pivot_rows.append(row)
        return True


def jordan_chains(n_mat: np.ndarray, p: int) -> list[list[np.ndarray]]:
    """An explicit Jordan basis of a nilpotent matrix, as chains
    [v, Nv, ..., N^(s-1)v] with N^s v = 0.

    Works down from the top nilpotency degree: new chain tops at height s
    are vectors of ker(N^s) independent of ker(N^(s-1)) and of the images
    at height s of the already chosen taller chains.
    """
    d = n_mat.shape[0]
    if d == 0:
        return []
    kernels = []
    power = n_mat % p
    while True:
        basis, _ = nullspace_mod(power, p)
        kernels.append(basis)
        if basis.shape[1] == d:
            break
        power = matmul_mod(power, n_mat, p)
    t = len(kernels)
    tops: list[tuple[np.ndarray, int]] = []  # (vector, height)
    for s in range(t, 0, -1):
        covered = _IncrementalBasis(d, p)
        if s >= 2:
            for col in kernels[s - 2].T:
                covered.add(col)
        for top, height in tops:
            v = top
            for _ in range(height - s):
                v = matmul_mod(n_mat, v[:, None], p)[:, 0]
            covered.add(v)
        for col in kernels[s - 1].T:
            if covered.add(col):
                tops.append((col.copy(), s))
    chains = []
    for top, height in tops:
        chain = [top]
        for _ in range(height - 1):
            chain.append(matmul_mod(n_mat, chain[-1][:, None], p)[:, 0])
        chains.append(chain)
    assert sum(len(c) for c in chains) == d
    return chains


def relative_heller_oracle_counit(n: int, i: int, group: GroupSpec,
                                  cap: int | None = None) -> ModuleSum:
    """Kernel of the explicit counit Ind_{D_i}^D Res_{D_i} J_n ->> J_n,
    minimized over direct summands.

    The counit cover is decomposed into explicit Jordan chains; the shortest
    chain-spanned summand on which the counit stays surjective is the
    minimized cover, and the kernel of the restricted surjection is
    decomposed by the rank sequence.  Heavier than `relative_heller_oracle`
    (the whole nq-dimensional module is decomposed) and used to
    cross-check it.
    """
    if not 0 <= i <= group.ell:
        raise ValueError(f"subgroup index {i} out of range 0..{group.ell}")
    p = group.p
    q = group.p ** (group.ell - i)
    dim = n * q
    check_capacity(dim, cap)
    block = _shift_block(n, p)
    # induced-restricted module: q blocks of the restricted space, the
    # generator shifts blocks and wraps through A^q
    big = np.zeros((dim, dim), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    a_q = matpow_mod(block, q, p)
    for j in range(q - 1):
        big[(j + 1) * n : (j + 2) * n, j * n : (j + 1) * n] = eye
    big[0:n, (q - 1) * n : q * n] = a_q
    nilpotent = (big - np.eye(dim, dtype=np.int64)) % p
    chains = jordan_chains(nilpotent, p)
    lengths = sorted(len(c) for c in chains)
    assert tuple(sorted(lengths, reverse=True)) == \
        jordan_type(MatrixModule(group, big), cap).parts
    # counit: g^j (x) v  |->  A^j v
    eps = np.zeros((n, dim), dtype=np.int64)
    a_pow = np.eye(n, dtype=np.int64)
    for j in range(q):
        eps[:, j * n : (j + 1) * n] = a_pow
        a_pow = matmul_mod(a_pow, block, p)
    # minimize: shortest chain summand still covering the target (the
    # target is uniserial, so some single chain always surjects)
    usable = sorted((c for c in chains if len(c) >= n), key=len)
    for chain in usable:
        span = np.column_stack(chain)
        if rank_mod(matmul_mod(eps, span, p), p) < n:
            continue
        basis, free = nullspace_mod(matmul_mod(eps, span, p), p)
        kernel_vecs = matmul_mod(span, basis, p)  # in ambient coordinates
        if kernel_vecs.shape[1] == 0:
            return ModuleSum(group, ())
        # action of the generator on the kernel, in kernel coordinates
        coords = _IncrementalBasis(dim, p)
        for col in kernel_vecs.T:
            coords.add(col)
        image = matmul_mod(big, coords.cols, p)
        action = image[coords.pivot_rows, :] % p
        if not np.array_equal(matmul_mod(coords.cols, action, p), image):
            raise AssertionError("counit kernel is not invariant under the action")
        return jordan_type(MatrixModule(group, action), cap)
    raise AssertionError("no single chain summand covers the target")


def heller_oracle(m: ModuleSum, cap: int | None = None) -> ModuleSum:
    return relative_heller_oracle(m, 0, cap)


def is_endo_permutation(m: ModuleSum, cap: int | None = None) -> bool:
    """True iff End(M) = M (x) M* is a permutation module.  J_n is
    self-dual, so the endomorphism module is the tensor square."""
    from .modules import is_permutation

    return is_permutation(tensor_decompose(m, m, cap))


def cap_part(m: ModuleSum, check_endo: bool = False,
             cap: int | None = None) -> int:
    """The unique part with full vertex (size coprime to p), if it exists.

    For a capped endo-permutation module this is its cap.  Uniqueness is up
    to isomorphism: repeated copies of one coprime size are fine, two
    different coprime sizes are not.  The (expensive) endo-permutation check
    via the tensor oracle is opt-in.
    """
    if not m.parts:
        raise NotCappedError("not capped endo-permutation: zero module")
    coprime = {n for n in m.parts if n % m.group.p != 0}
    if len(coprime) != 1:
        raise NotCappedError(
            f"not capped endo-permutation: full-vertex parts {sorted(coprime)}"
        )
    if check_endo and not is_endo_permutation(m, cap):
        raise NotCappedError("not capped endo-permutation: tensor square "
                             "is not a permutation module")
    return coprime.pop()
