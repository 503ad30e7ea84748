"""
Adams modules: finitely generated Z_(p)-modules with the operator Ψ = ψ^g for
g = 1 + p, and the Ψ-equivariant maps between them.
"""
import itertools
from dataclasses import dataclass

import sympy
from sympy import ImmutableMatrix, Rational

from pyadams.common_debugging import fn_name_current
from pyadams.common_dict import simple_obj
from pyadams.common_errors import (
    NotDualisableError,
    NotEquivariantError,
    ValidationError,
)
from pyadams.common_module import (
    FgModule,
    HomModule,
    MatrixMap,
    cokernel,
    factor_through,
    homology_data,
    image,
    induced_homology_entries,
    iso_p,
    kernel,
    mat_eye,
    mat_hstack,
    mat_zero_p,
    mat_zeros,
    module_sum,
    tensor_data,
    tensor_maps,
)
from pyadams.common_scalar import (
    reduce_mod,
    scalar_format,
    twist_scalar,
    weight_of_eigenvalue,
)
from pyadams.common_snf import matrix_inverse


##
@dataclass(frozen=True)
class AdamsModule:
    underlying: FgModule
    psi: MatrixMap

    def __post_init__(self):
        if self.psi.source != self.underlying or self.psi.target != self.underlying:
            raise ValidationError(
                f"psi must be an endomorphism of {self.underlying}"
            )

    @property
    def p(self):
        return self.underlying.p

    @property
    def n_gens(self):
        return self.underlying.n_gens

    def zero_p(self):
        return self.underlying.zero_p()

    def __str__(self):
        return adams_str(self)


def adams_module(underlying, psi_entries):
    return AdamsModule(underlying, MatrixMap(underlying, underlying, psi_entries))


def adams_str(M):
    U = M.underlying
    if U.zero_p():
        return "0"
    if U.n_gens == 1:
        x = M.psi.entries[0, 0]
        if U.free_rank == 1:
            j = weight_of_eigenvalue(x, M.p)
            if j is not None:
                return f"L_{j}"
        elif x == 1:
            return f"({U}, psi=1)"

    psi = [[scalar_format(x) for x in M.psi.entries.row(i)] for i in range(U.n_gens)]
    return f"({U}, psi={psi})"


##
@dataclass(frozen=True)
class AdamsMap:
    source: AdamsModule
    target: AdamsModule
    entries: ImmutableMatrix

    def __post_init__(self):
        f = MatrixMap(self.source.underlying, self.target.underlying, self.entries)
        object.__setattr__(self, "entries", f.entries)

        lhs = self.target.psi @ f
        rhs = f @ self.source.psi
        if lhs != rhs:
            raise NotEquivariantError(
                f"map does not commute with psi: {self.source} -> {self.target}"
            )

    @property
    def p(self):
        return self.source.p

    @property
    def map(self):
        return MatrixMap(self.source.underlying, self.target.underlying, self.entries)

    def __matmul__(self, other):
        """self ∘ other"""
        if other.target != self.source:
            raise ValidationError(
                f"cannot compose: {other.target} is not {self.source}"
            )
        return AdamsMap(other.source, self.target, self.entries * other.entries)

    def __add__(self, other):
        self._same_shape_check(other)
        return AdamsMap(self.source, self.target, self.entries + other.entries)

    def __sub__(self, other):
        self._same_shape_check(other)
        return AdamsMap(self.source, self.target, self.entries - other.entries)

    def __neg__(self):
        return AdamsMap(self.source, self.target, -self.entries)

    def scale(self, c):
        return AdamsMap(self.source, self.target, self.entries * Rational(c))

    def _same_shape_check(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValidationError("maps have different sources or targets")

    def zero_p(self):
        return mat_zero_p(self.entries)


def adams_identity(M):
    return AdamsMap(M, M, mat_eye(M.n_gens))


def adams_zero(M, N):
    return AdamsMap(M, N, mat_zeros(N.n_gens, M.n_gens))


##
def zero_adams(p):
    return adams_module(FgModule(p), [])


def line(p, j):
    """L_j = (Z_(p), Ψ = g^{j(p-1)})."""
    return adams_module(FgModule(p, 1), [[twist_scalar(p, j)]])


def unit(p):
    return line(p, 0)


def cyclic_adams(p, exponent, psi=1):
    return adams_module(FgModule(p, 0, (exponent,)), [[psi]])


def twist(M, n):
    """T^n M: the same underlying module with Ψ scaled by g^{n(p-1)}."""
    if n == 0:
        return M
    return adams_module(M.underlying, M.psi.entries * twist_scalar(M.p, n))


def twist_map(f, n):
    return AdamsMap(twist(f.source, n), twist(f.target, n), f.entries)


##
def smash(M, N):
    """M ∧ N: the tensor product over Z_(p) with the diagonal action Ψ_M ⊗ Ψ_N."""
    return AdamsModule(
        tensor_data(M.underlying, N.underlying).module,
        tensor_maps(M.psi, N.psi),
    )


def smash_maps(f, g):
    return AdamsMap(
        smash(f.source, g.source),
        smash(f.target, g.target),
        tensor_maps(f.map, g.map).entries,
    )


##
def adams_sum(modules, p=None):
    """
    The direct sum with its injections and projections as AdamsMaps.
    """
    modules = list(modules)
    if p is None:
        p = modules[0].p

    data = module_sum([M.underlying for M in modules], p=p)
    n = data.module.n_gens
    psi = mat_zeros(n, n)
    for M, inj, proj in zip(modules, data.inj, data.proj):
        psi = psi + inj * M.psi.entries * proj

    S = adams_module(data.module, psi)
    return simple_obj(
        module=S,
        inj=[AdamsMap(M, S, inj) for M, inj in zip(modules, data.inj)],
        proj=[AdamsMap(S, M, proj) for M, proj in zip(modules, data.proj)],
    )


def block_map(source_sum, target_sum, blocks):
    """
    The AdamsMap between two sums whose (t, s) block is `blocks[(t, s)]`
    (an AdamsMap or an entries matrix); missing blocks are zero.
    """
    S, T = source_sum.module, target_sum.module
    res = mat_zeros(T.n_gens, S.n_gens)
    for (t, s), block in blocks.items():
        entries = block.entries if isinstance(block, AdamsMap) else block
        res = res + target_sum.inj[t].entries * entries * source_sum.proj[s].entries
    return AdamsMap(S, T, res)


def map_sum(maps, p=None):
    """f_1 ⊕ f_2 ⊕ ... between the sums of sources and targets."""
    maps = list(maps)
    src = adams_sum([f.source for f in maps], p=p)
    tgt = adams_sum([f.target for f in maps], p=p)
    return block_map(src, tgt, {(i, i): f for i, f in enumerate(maps)})


##
def adams_kernel(f):
    ker = kernel(f.map)
    psi = factor_through(ker.incl, f.source.psi @ ker.incl)
    K = AdamsModule(ker.module, psi)
    return simple_obj(module=K, incl=AdamsMap(K, f.source, ker.incl.entries))


def adams_cokernel(f):
    coker = cokernel(f.map)
    C = adams_module(
        coker.module,
        coker.proj.entries * f.target.psi.entries * coker.lift,
    )
    return simple_obj(
        module=C,
        proj=AdamsMap(f.target, C, coker.proj.entries),
        lift=coker.lift,
    )


def adams_image(f):
    img = image(f.map)
    psi = factor_through(img.incl, f.target.psi @ img.incl)
    I = AdamsModule(img.module, psi)
    return simple_obj(
        module=I,
        incl=AdamsMap(I, f.target, img.incl.entries),
        proj=AdamsMap(f.source, I, img.proj.entries),
    )


def adams_homology_data(d_in, d_out, *, degree=None):
    """
    Homology ker(d_out)/im(d_in) as an AdamsModule, with the data needed to
    induce maps on it.
    """
    data = homology_data(d_in.map, d_out.map, degree=degree)
    middle = d_out.source

    psi_cycles = factor_through(data.cycles_incl, middle.psi @ data.cycles_incl)
    H = adams_module(
        data.module,
        data.proj.entries * psi_cycles.entries * data.lift,
    )
    return simple_obj(
        module=H,
        cycles_incl=data.cycles_incl,
        proj=data.proj,
        lift=data.lift,
    )


def adams_homology_at(d_in, d_out, *, degree=None):
    return adams_homology_data(d_in, d_out, degree=degree).module


def homology_map(source_data, target_data, f):
    """The map H(X) → H(Y) induced by a level map f: X_n → Y_n."""
    entries = induced_homology_entries(source_data, target_data, f.map)
    return AdamsMap(source_data.module, target_data.module, entries)


def is_iso_map(f):
    return iso_p(f.map)


##
def hom_group(M, N):
    """
    Hom_𝓑(M, N): the kernel of F ↦ Ψ_N F − F Ψ_M on Hom_{Z_(p)}(M, N).

    The record has the `module` and one AdamsMap per generator in
    `generators`.
    """
    hm = HomModule(M.underlying, N.underlying)
    psi_M, psi_N = M.psi.entries, N.psi.entries
    op = hm.operator(hm, lambda F: psi_N * F - F * psi_M)
    ker = kernel(op)

    generators = [
        AdamsMap(M, N, hm.to_matrix(ker.incl.entries[:, k]))
        for k in range(ker.module.n_gens)
    ]
    return simple_obj(
        module=ker.module,
        generators=generators,
        hom=hm,
        incl=ker.incl,
    )


def hom_coords(hg, f):
    """Coordinates of an AdamsMap in the normal form of `hom_group`."""
    col = hg.hom.coords(f.entries)
    return factor_through(
        hg.incl,
        MatrixMap(FgModule(f.p, 1), hg.incl.target, col),
    ).entries


##
def psi_inverse(M):
    inv = matrix_inverse(M.psi.entries, M.p)
    if inv is None:
        raise ValidationError(f"{fn_name_current()}: psi of {M} is not invertible")
    return MatrixMap(M.underlying, M.underlying, inv)


def dualisable_check(M):
    if M.underlying.torsion:
        raise NotDualisableError(
            f"not dualisable: {M} has torsion {M.underlying.torsion}"
        )


def dual(M):
    """DM = Hom(M, Z_(p)) with Ψ = (Ψ_M^{-1})^T."""
    dualisable_check(M)
    return adams_module(M.underlying, psi_inverse(M).entries.T)


def function_object(M, N):
    """F(M, N) := DM ∧ N."""
    return smash(dual(M), N)


def internal_hom(M, N):
    """
    Hom_{Z_(p)}(M, N) with the conjugation action F ↦ Ψ_N F Ψ_M^{-1}.

    Returns the AdamsModule and the HomModule coordinates it is built on.
    """
    hm = HomModule(M.underlying, N.underlying)
    psi_inv = psi_inverse(M).entries
    psi_N = N.psi.entries
    action = hm.operator(hm, lambda F: psi_N * F * psi_inv)
    return simple_obj(module=AdamsModule(hm.module, action), hom=hm)


def dual_comparison(M, N):
    """The natural map DM ∧ N → internal_hom(M, N), e_i^* ⊗ n ↦ (e_i ↦ n)."""
    dualisable_check(M)
    source = function_object(M, N)
    target = internal_hom(M, N)
    hm = target.hom
    m, n = M.n_gens, N.n_gens

    cols = []
    for i in range(m):
        for k in range(n):
            E = ImmutableMatrix(n, m, lambda a, b: 1 if (a, b) == (k, i) else 0)
            cols.append(hm.coords(E))

    perm = tensor_data(dual(M).underlying, N.underlying).perm
    entries = mat_hstack(mat_zeros(hm.module.n_gens, 0), *cols) * perm.T
    return AdamsMap(source, target.module, entries)


def is_dualisable(M, members=None):
    """
    Dualisable iff the underlying module is free. The certificate checks that
    DM ∧ N → internal_hom(M, N) is an isomorphism for N in `members` (default:
    the default detection family).
    """
    if M.underlying.torsion:
        return simple_obj(
            dualisable_p=False,
            reason=f"torsion {list(M.underlying.torsion)}",
            certificate=(),
        )

    if members is None:
        from pyadams.common_family import detection_family

        members = [N for _, N in detection_family(M.p).members]

    certificate = tuple(
        (str(N), is_iso_map(dual_comparison(M, N))) for N in members
    )
    return simple_obj(
        dualisable_p=all(ok for _, ok in certificate),
        reason=None,
        certificate=certificate,
    )


##
def validate_object(M):
    """
    Checks a candidate AdamsModule. Never raises on mathematical failure; the
    report lists each failed condition separately.
    """
    p = M.p
    n, r = M.n_gens, M.underlying.free_rank
    A = M.psi.entries
    errors = []

    invertible_p = matrix_inverse(A, p) is not None
    if not invertible_p:
        errors.append("psi is not invertible over Z_(p)")

    #: on M/pM, Ψ − 1 must be nilpotent
    nilpotent = ImmutableMatrix(n, n, lambda i, j: reduce_mod(A[i, j], p, 1)) - mat_eye(n)
    power = mat_eye(n)
    for _ in range(n):
        power = power * nilpotent
        power = power.applyfunc(lambda x: reduce_mod(x, p, 1))
    unipotent_p = mat_zero_p(power)
    if not unipotent_p:
        errors.append("psi is not unipotent modulo p")

    weights = []
    eigen_p = True
    squarefree_p = True
    if r:
        free_block = sympy.Matrix(A[:r, :r])
        x = sympy.Symbol("x")
        roots = sympy.roots(free_block.charpoly(x).as_expr(), x, filter="Q")
        if sum(roots.values()) != r:
            eigen_p = False
            errors.append("psi has irrational eigenvalues")

        for root, mult in sorted(roots.items(), key=lambda t: t[0]):
            j = weight_of_eigenvalue(root, p)
            if j is None:
                eigen_p = False
                errors.append(
                    f"eigenvalue {root} is not of the form g^(j(p-1)) for g = {p + 1}"
                )
            else:
                weights.extend([j] * mult)

        if eigen_p:
            product = sympy.eye(r)
            for root in roots:
                product = product * (free_block - root * sympy.eye(r))
            squarefree_p = product.is_zero_matrix
            if not squarefree_p:
                errors.append("the minimal polynomial of psi is not squarefree")

    return simple_obj(
        valid_p=not errors,
        invertible_p=invertible_p,
        unipotent_p=unipotent_p,
        eigen_p=eigen_p,
        squarefree_p=squarefree_p,
        weights=tuple(sorted(weights)),
        errors=tuple(errors),
    )


def weights_of(M):
    return validate_object(M).weights


##
def _reduced_mod_p(f):
    """The matrix of f ⊗ F_p: M/pM → N/pN, as rows of ints in [0, p)."""
    p = f.p
    return [[int(reduce_mod(x, p, 1)) for x in f.entries.row(i)] for i in range(f.entries.rows)]


def det_mod_p(rows, p):
    """The determinant over F_p of a square matrix of ints."""
    A = [[x % p for x in row] for row in rows]
    n = len(A)
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            factor = A[r][c] * inv % p
            if factor:
                A[r] = [(a - factor * b) % p for a, b in zip(A[r], A[c])]
    return det % p


def span_basis_mod_p(matrices, p):
    """A basis of the F_p-span of equally shaped int matrices, by row reduction."""
    if not matrices:
        return []
    rows, cols = len(matrices[0]), len(matrices[0][0])
    echelon = []
    for A in matrices:
        v = [x % p for row in A for x in row]
        for pivot, u in echelon:
            if v[pivot]:
                factor = v[pivot]
                v = [(a - factor * b) % p for a, b in zip(v, u)]
        pivot = next((k for k, x in enumerate(v) if x), None)
        if pivot is not None:
            inv = pow(v[pivot], -1, p)
            echelon.append((pivot, [x * inv % p for x in v]))

    return [[u[r * cols:(r + 1) * cols] for r in range(rows)] for _, u in echelon]


def _combine(basis, coeffs, p):
    n, m = len(basis[0]), len(basis[0][0])
    return [
        [sum(c * B[i][j] for c, B in zip(coeffs, basis)) % p for j in range(m)]
        for i in range(n)
    ]


def span_has_invertible_p(basis, p, max_points=3**8):
    """
    Whether the F_p-span of the square matrices `basis` contains an
    invertible one. Small spans are enumerated. Otherwise the determinant of
    the generic member Σ x_k B_k is reduced as a function on F_p^d (x^p = x);
    it has a nonzero value iff the reduced polynomial is nonzero.
    """
    if not basis:
        return False
    n = len(basis[0])
    if n == 0:
        return True

    d = len(basis)
    if any(det_mod_p(B, p) for B in basis) or det_mod_p(_combine(basis, [1] * d, p), p):
        return True

    if p**d <= max_points:
        return any(
            det_mod_p(_combine(basis, coeffs, p), p)
            for coeffs in itertools.product(range(p), repeat=d)
        )

    xs = sympy.symbols(f"x0:{d}")
    generic = sympy.Matrix(n, n, lambda i, j: sum(x * B[i][j] for x, B in zip(xs, basis)))
    det = sympy.Poly(generic.det(method="berkowitz"), *xs)
    reduced = {}
    for monom, coeff in det.terms():
        key = tuple(e and (e - 1) % (p - 1) + 1 for e in monom)
        reduced[key] = (reduced.get(key, 0) + int(coeff)) % p
    return any(reduced.values())


def adams_isomorphic_p(M, N):
    """
    Whether M ≅ N in 𝓑.

    With equal underlying modules, f: M → N is an isomorphism iff it is
    surjective iff f ⊗ F_p is invertible (Nakayama). The reductions of the
    hom_group generators span every f ⊗ F_p, so M ≅ N iff that F_p-span
    contains an invertible matrix, which `span_has_invertible_p` decides.
    """
    if M == N:
        return True
    if M.underlying != N.underlying:
        return False
    if M.underlying.zero_p():
        return True
    if weights_of(M) != weights_of(N):
        return False

    p = M.p
    basis = span_basis_mod_p([_reduced_mod_p(g) for g in hom_group(M, N).generators], p)
    return span_has_invertible_p(basis, p)
