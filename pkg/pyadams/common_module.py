"""
Finitely generated Z_(p)-modules in normal form, and the maps between them.

A module Z_(p)^r ⊕ ⊕_i Z/p^{e_i} is stored as (free_rank, torsion) with the
torsion exponents nonincreasing. Its canonical generators come free ones
first, then the torsion ones in stored order. Maps are matrices against these
generators: column j is the image of generator j. Entries in rows of torsion
generators are kept reduced modulo their order.
"""
from dataclasses import dataclass
from typing import Tuple

from sympy import ImmutableMatrix, Integer, Rational

from pyadams.common_debugging import fn_name_current
from pyadams.common_dict import simple_obj
from pyadams.common_errors import NotAComplexError, ValidationError
from pyadams.common_scalar import (
    prime_check,
    reduce_mod,
    scalar,
    scalar_format,
    valuation,
)
from pyadams.common_snf import free_kernel, free_solve, smith_normal_form


##
def mat_zeros(m, n):
    return ImmutableMatrix.zeros(m, n)


def mat_eye(n):
    return ImmutableMatrix.eye(n)


def mat_hstack(*mats):
    rows = mats[0].shape[0]
    cols = sum(m.shape[1] for m in mats)
    if cols == 0:
        return mat_zeros(rows, 0)
    return ImmutableMatrix.hstack(*[m for m in mats if m.shape[1] > 0])


def mat_vstack(*mats):
    cols = mats[0].shape[1]
    rows = sum(m.shape[0] for m in mats)
    if rows == 0:
        return mat_zeros(0, cols)
    return ImmutableMatrix.vstack(*[m for m in mats if m.shape[0] > 0])


def mat_kron(A, B):
    (a, b), (c, d) = A.shape, B.shape
    return ImmutableMatrix(
        a * c,
        b * d,
        lambda i, j: A[i // c, j // d] * B[i % c, j % d],
    )


def mat_zero_p(A):
    return all(x == 0 for x in A)


def as_matrix(entries, rows, cols, p=None):
    """
    Converts nested lists (or a sympy matrix) into an exact `ImmutableMatrix`
    of the given shape, checking the entries are rational (and p-local).
    """
    if hasattr(entries, "shape"):
        if tuple(entries.shape) != (rows, cols):
            raise ValidationError(
                f"{fn_name_current()}: expected a {rows}x{cols} matrix, got {entries.shape[0]}x{entries.shape[1]}"
            )
        flat = list(entries)
    else:
        entries = list(entries)
        if rows == 0:
            if entries and any(len(r) for r in entries):
                raise ValidationError(
                    f"{fn_name_current()}: expected a 0x{cols} matrix, got {len(entries)} rows"
                )
            return mat_zeros(0, cols)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValidationError(
                f"{fn_name_current()}: expected a {rows}x{cols} matrix"
            )
        flat = [x for r in entries for x in r]

    return ImmutableMatrix(rows, cols, [scalar(x, p) for x in flat])


##
@dataclass(frozen=True)
class FgModule:
    p: int
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        prime_check(self.p)
        torsion = tuple(int(e) for e in self.torsion)
        object.__setattr__(self, "torsion", torsion)

        if self.free_rank < 0:
            raise ValidationError(f"negative free rank: {self.free_rank}")
        if any(e <= 0 for e in torsion):
            raise ValidationError(f"torsion exponents must be positive: {torsion}")
        if list(torsion) != sorted(torsion, reverse=True):
            raise ValidationError(f"torsion exponents must be nonincreasing: {torsion}")

    @property
    def n_gens(self):
        return self.free_rank + len(self.torsion)

    @property
    def orders(self):
        """Per generator: None for a free generator, else its exponent e (order p^e)."""
        return (None,) * self.free_rank + self.torsion

    def zero_p(self):
        return self.n_gens == 0

    def free_p(self):
        return not self.torsion

    @property
    def relations(self):
        """The n x t presentation matrix: column i is p^{e_i} on torsion generator i."""
        n, r = self.n_gens, self.free_rank
        return ImmutableMatrix(
            n,
            len(self.torsion),
            lambda i, j: Integer(self.p) ** self.torsion[j] if i == r + j else 0,
        )

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(
                f"Z_({self.p})" + (f"^{self.free_rank}" if self.free_rank > 1 else "")
            )
        for e in self.torsion:
            parts.append(f"Z/{self.p}" + (f"^{e}" if e > 1 else ""))
        return " + ".join(parts) if parts else "0"


def zero_module(p):
    return FgModule(p)


def free_module(p, rank=1):
    return FgModule(p, rank)


def cyclic_module(p, exponent):
    return FgModule(p, 0, (exponent,))


##
def matrix_reduce(target, entries):
    """Reduces the rows of torsion generators of `target` modulo their orders."""
    p, r = target.p, target.free_rank
    if not target.torsion:
        return entries

    m, n = entries.shape
    return ImmutableMatrix(
        m,
        n,
        lambda i, j: entries[i, j]
        if i < r
        else reduce_mod(entries[i, j], p, target.torsion[i - r]),
    )


def well_defined_check(source, target, entries):
    """
    Each generator's order must annihilate its image: for a source generator of
    order p^e and a target generator of order p^f, the entry needs
    v_p ≥ f − e; a free target generator forces the entry to vanish.
    """
    p = source.p
    t_orders = target.orders
    for j, e in enumerate(source.orders):
        if e is None:
            continue
        for i, f in enumerate(t_orders):
            x = entries[i, j]
            if x == 0:
                continue
            if f is None:
                raise ValidationError(
                    f"{fn_name_current()}: generator {j} has order {p}^{e} but maps to a free generator (entry {i},{j} = {scalar_format(x)})"
                )
            if valuation(x, p) < f - e:
                raise ValidationError(
                    f"{fn_name_current()}: entry {i},{j} = {scalar_format(x)} violates the order {p}^{e} of generator {j} (needs valuation >= {f - e})"
                )


@dataclass(frozen=True)
class MatrixMap:
    source: FgModule
    target: FgModule
    entries: ImmutableMatrix

    def __post_init__(self):
        if self.source.p != self.target.p:
            raise ValidationError(
                f"prime mismatch: {self.source.p} vs {self.target.p}"
            )
        entries = as_matrix(
            self.entries,
            self.target.n_gens,
            self.source.n_gens,
            p=self.source.p,
        )
        entries = matrix_reduce(self.target, entries)
        well_defined_check(self.source, self.target, entries)
        object.__setattr__(self, "entries", entries)

    @property
    def p(self):
        return self.source.p

    def __matmul__(self, other):
        """self ∘ other"""
        if other.target != self.source:
            raise ValidationError(
                f"cannot compose: {other.target} is not {self.source}"
            )
        return MatrixMap(other.source, self.target, self.entries * other.entries)

    def __add__(self, other):
        self._same_shape_check(other)
        return MatrixMap(self.source, self.target, self.entries + other.entries)

    def __sub__(self, other):
        self._same_shape_check(other)
        return MatrixMap(self.source, self.target, self.entries - other.entries)

    def __neg__(self):
        return MatrixMap(self.source, self.target, -self.entries)

    def scale(self, c):
        return MatrixMap(self.source, self.target, self.entries * Rational(c))

    def _same_shape_check(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValidationError("maps have different sources or targets")

    def zero_p(self):
        return mat_zero_p(self.entries)


def map_identity(M):
    return MatrixMap(M, M, mat_eye(M.n_gens))


def map_zero(M, N):
    return MatrixMap(M, N, mat_zeros(N.n_gens, M.n_gens))


##
def presentation_reduce(p, n_gens, relations):
    """
    Normal form of Z_(p)^n / (column span of `relations`).

    Returns a record with the `module`, `proj` (module coordinates of the
    old generators) and `lift` (old coordinates of the new generators).
    """
    res = smith_normal_form(relations, p)
    U, U_inv = res.U, res.U_inv

    free = list(range(res.rank, n_gens))
    torsion = [(a, i) for i, a in enumerate(res.exponents) if a > 0]
    torsion.sort(key=lambda t: (-t[0], t[1]))

    rows = free + [i for _, i in torsion]
    module = FgModule(p, len(free), tuple(a for a, _ in torsion))

    proj = ImmutableMatrix(len(rows), n_gens, lambda k, j: U[rows[k], j])
    proj = matrix_reduce(module, proj)
    lift = ImmutableMatrix(n_gens, len(rows), lambda i, k: U_inv[i, rows[k]])

    return simple_obj(module=module, proj=proj, lift=lift)


def normalize_presentation(p, n_gens, relations):
    relations = as_matrix(relations, n_gens, _cols_of(relations), p=p)
    return presentation_reduce(p, n_gens, relations).module


def _cols_of(relations):
    if hasattr(relations, "shape"):
        return relations.shape[1]
    relations = list(relations)
    return len(relations[0]) if relations else 0


##
def submodule(M, generators):
    """
    The submodule of M generated by the columns of `generators` (in M's
    coordinates), in normal form.

    Returns a record with `module`, `incl` (a MatrixMap into M) and `proj`
    (the new coordinates of each given generator).
    """
    p = M.p
    k = generators.shape[1]

    A = mat_hstack(generators, -M.relations)
    kernel_cols = free_kernel(A, p)
    C = kernel_cols[:k, :]

    pres = presentation_reduce(p, k, C)
    incl = MatrixMap(pres.module, M, generators * pres.lift)

    return simple_obj(module=pres.module, incl=incl, proj=pres.proj)


def kernel(f):
    source, target = f.source, f.target
    A = mat_hstack(f.entries, -target.relations)
    kernel_cols = free_kernel(A, f.p)
    X = kernel_cols[: source.n_gens, :]

    sub = submodule(source, X)
    return simple_obj(module=sub.module, incl=sub.incl)


def image(f):
    sub = submodule(f.target, f.entries)
    proj = MatrixMap(f.source, sub.module, sub.proj)
    return simple_obj(module=sub.module, incl=sub.incl, proj=proj)


def cokernel(f):
    target = f.target
    pres = presentation_reduce(
        f.p,
        target.n_gens,
        mat_hstack(target.relations, f.entries),
    )
    proj = MatrixMap(target, pres.module, pres.proj)
    return simple_obj(module=pres.module, proj=proj, lift=pres.lift)


def kernel_cokernel_image(f):
    """
    Exact kernel, cokernel and image of `f` with their structure maps:
    ker --incl--> source --f--> target --proj--> coker, and
    source --image.proj--> img --image.incl--> target.
    """
    ker = kernel(f)
    coker = cokernel(f)
    img = image(f)

    return simple_obj(
        kernel=ker.module,
        kernel_incl=ker.incl,
        cokernel=coker.module,
        cokernel_proj=coker.proj,
        cokernel_lift=coker.lift,
        image=img.module,
        image_incl=img.incl,
        image_proj=img.proj,
    )


def injective_p(f):
    return kernel(f).module.zero_p()


def surjective_p(f):
    return cokernel(f).module.zero_p()


def iso_p(f):
    return f.source.n_gens == f.target.n_gens and injective_p(f) and surjective_p(f)


##
def module_solve(M, generators, rhs):
    """
    Coefficients c with generators·c ≡ rhs in M, or None.

    `generators` and `rhs` are matrices of columns in M's coordinates.
    """
    k = generators.shape[1]
    sol = free_solve(mat_hstack(generators, M.relations), rhs, M.p)
    if sol is None:
        return None
    return sol[:k, :]


def factor_through(incl, f):
    """
    The map g with incl ∘ g = f, for `incl` injective into f.target.

    Raises ValidationError when f does not land in the image of `incl`.
    """
    coeffs = module_solve(incl.target, incl.entries, f.entries)
    if coeffs is None:
        raise ValidationError(
            f"{fn_name_current()}: the map does not factor through the given submodule"
        )
    return MatrixMap(f.source, incl.source, coeffs)


##
def homology_data(d_in, d_out, *, degree=None):
    """
    ker(d_out)/im(d_in) with its structure maps.

    The record has `module`, `cycles_incl` (Z → B), `proj` (Z → H) and `lift`
    (Z-coordinates of the generators of H).
    """
    if not (d_out @ d_in).zero_p():
        raise NotAComplexError(
            f"not a complex: d∘d != 0" + (f" at degree {degree}" if degree is not None else ""),
            degree=degree,
        )

    cycles = kernel(d_out)
    boundary = factor_through(cycles.incl, d_in)
    quotient = cokernel(boundary)

    return simple_obj(
        module=quotient.module,
        cycles_incl=cycles.incl,
        proj=quotient.proj,
        lift=quotient.lift,
    )


def homology_at(d_in, d_out, *, degree=None):
    return homology_data(d_in, d_out, degree=degree).module


def induced_homology_entries(source_data, target_data, f):
    """
    The matrix of the map on homology induced by f from the middle term of
    `source_data` to that of `target_data`.
    """
    moved = f @ source_data.cycles_incl
    cycles_map = factor_through(target_data.cycles_incl, moved)
    return target_data.proj.entries * cycles_map.entries * source_data.lift


def induced_homology_map(source_data, target_data, f):
    return MatrixMap(
        source_data.module,
        target_data.module,
        induced_homology_entries(source_data, target_data, f),
    )


##
def diagonal_module(p, orders):
    """
    Normal form of a direct sum of cyclic modules given by `orders` (None for
    Z_(p), e for Z/p^e), with the permutation matrix to the canonical order.
    """
    orders = list(orders)
    free = [i for i, e in enumerate(orders) if e is None]
    torsion = sorted(
        [i for i, e in enumerate(orders) if e is not None],
        key=lambda i: (-orders[i], i),
    )
    rows = free + torsion

    module = FgModule(p, len(free), tuple(orders[i] for i in torsion))
    perm = ImmutableMatrix(
        len(rows),
        len(orders),
        lambda k, j: 1 if rows[k] == j else 0,
    )
    return simple_obj(module=module, perm=perm)


def module_sum(modules, p=None):
    """
    The direct sum of `modules` in normal form, with injections and projections
    as matrices.
    """
    modules = list(modules)
    if p is None:
        p = modules[0].p

    orders = [e for M in modules for e in M.orders]
    diag = diagonal_module(p, orders)
    total = len(orders)

    injections = []
    offset = 0
    for M in modules:
        n = M.n_gens
        embed = ImmutableMatrix(
            total,
            n,
            lambda i, j, offset=offset: 1 if i == offset + j else 0,
        )
        injections.append(diag.perm * embed)
        offset += n

    return simple_obj(
        module=diag.module,
        inj=injections,
        proj=[inj.T for inj in injections],
    )


def block_entries(target_sum, source_sum, blocks):
    """
    Assembles a matrix between two sums from `blocks`, a dict mapping
    (target index, source index) to the block matrix.
    """
    n_t = target_sum.module.n_gens
    n_s = source_sum.module.n_gens
    res = mat_zeros(n_t, n_s)
    for (t, s), block in blocks.items():
        res = res + target_sum.inj[t] * block * source_sum.proj[s]
    return res


##
def tensor_data(M, N):
    p = M.p
    orders = []
    for e in M.orders:
        for f in N.orders:
            if e is None:
                orders.append(f)
            elif f is None:
                orders.append(e)
            else:
                orders.append(min(e, f))

    return diagonal_module(p, orders)


def tensor_modules(M, N):
    """M ⊗_{Z_(p)} N in normal form."""
    return tensor_data(M, N).module


def tensor_maps(f, g):
    """f ⊗ g: M ⊗ N → M' ⊗ N'."""
    src = tensor_data(f.source, g.source)
    tgt = tensor_data(f.target, g.target)
    entries = tgt.perm * mat_kron(f.entries, g.entries) * src.perm.T
    return MatrixMap(src.module, tgt.module, entries)


##
class HomModule:
    """
    Hom_{Z_(p)}(M, N) as a module in normal form, with coordinates for
    matrices.

    Basis maps send generator j of M to s·(generator i of N), with
    s = p^{max(f − e, 0)} for orders p^e → p^f.
    """

    def __init__(self, source, target):
        self.source = source
        self.target = target
        p = source.p

        basis = []
        for j, e in enumerate(source.orders):
            for i, f in enumerate(target.orders):
                if e is None:
                    basis.append((i, j, 1, f))
                elif f is None:
                    continue
                else:
                    basis.append((i, j, p ** max(f - e, 0), min(e, f)))

        self.basis = basis
        diag = diagonal_module(p, [b[3] for b in basis])
        self.module = diag.module
        self.perm = diag.perm

    def to_matrix(self, coords):
        raw = self.perm.T * coords
        m, n = self.target.n_gens, self.source.n_gens
        values = {}
        for k, (i, j, s, _) in enumerate(self.basis):
            values[(i, j)] = raw[k, 0] * s
        res = ImmutableMatrix(m, n, lambda i, j: values.get((i, j), 0))
        return matrix_reduce(self.target, res)

    def coords(self, matrix):
        matrix = matrix_reduce(self.target, matrix)
        raw = []
        for i, j, s, _ in self.basis:
            x = matrix[i, j] / s
            if valuation(x, self.source.p) < 0:
                raise ValidationError(
                    f"{fn_name_current()}: entry {i},{j} is not a well-defined homomorphism coefficient"
                )
            raw.append(x)
        col = ImmutableMatrix(len(raw), 1, raw)
        return matrix_reduce(self.module, self.perm * col)

    def generator_matrix(self, k):
        e = ImmutableMatrix(self.module.n_gens, 1, lambda i, _: 1 if i == k else 0)
        return self.to_matrix(e)

    def operator(self, other, fn):
        """The MatrixMap self.module → other.module induced by fn on matrices."""
        cols = [
            other.coords(fn(self.generator_matrix(k)))
            for k in range(self.module.n_gens)
        ]
        entries = mat_hstack(mat_zeros(other.module.n_gens, 0), *cols)
        return MatrixMap(self.module, other.module, entries)


##
