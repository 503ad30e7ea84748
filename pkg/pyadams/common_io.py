"""
The JSON file format of modules, complexes and maps.

Every document has `schema_version` (currently 1) and a `kind`:

- `module`: {"module": MODULE}
- `bounded`: {"levels": [{"degree": n, "module": MODULE}, ...],
  "diffs": [{"degree": n, "matrix": MATRIX}, ...]}
- `periodic`: {"period": N, "twist_weight": w, "levels": [MODULE] * N,
  "diffs": [MATRIX] * (N − 1), "wrap": MATRIX}, or
  {"period": N, "twist_weight": w, "periodify": BOUNDED}
- `map`: {"source": COMPLEX, "target": COMPLEX, "components": ...}, with
  window components (a list of N matrices) between periodic complexes and
  [{"degree": n, "matrix": MATRIX}] between bounded ones
- `unrolled_map`: {"source": BOUNDED, "target": PERIODIC, "components":
  [{"degree": n, "matrix": MATRIX}]}

A MODULE is {"line": j} or {"rank": r, "torsion": [e, ...], "psi": MATRIX}.
A MATRIX is a list of rows of scalars written as "a/b" strings (integers
are accepted). Nested complexes carry their own `kind`. `p`, `period` and
`twist_weight` are optional and default to the session configuration; a
given value must agree with it.
"""
from sympy import ImmutableMatrix

from pyadams.common_adams import AdamsModule, adams_module, line, validate_object
from pyadams.common_complex import BoundedComplex, ChainMap, bounded_complex, chain_map
from pyadams.common_errors import InputError, PyAdamsError
from pyadams.common_json import dumps, json_load, json_loads
from pyadams.common_module import FgModule
from pyadams.common_periodic import (
    PeriodicComplex,
    PeriodicMap,
    UnrolledChainMap,
    periodic_complex,
    periodic_map,
    periodify,
    unrolled_chain_map,
)
from pyadams.common_scalar import plocal_p, scalar_format, scalar_parse, weight_of_eigenvalue

SCHEMA_VERSION = 1
KINDS = ("module", "bounded", "periodic", "map", "unrolled_map")


##
def _field(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise InputError("expected an object", path=path)
    if key not in obj:
        raise InputError(f"missing field {key!r}", path=path)
    value = obj[key]
    if kind is list and not isinstance(value, list):
        raise InputError("expected a list", path=f"{path}.{key}")
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise InputError("expected an integer", path=f"{path}.{key}")
    return value


def _agree(obj, key, expected, path):
    if key not in obj:
        return expected
    value = _field(obj, key, path, int)
    if expected is not None and value != expected:
        raise InputError(f"{key}={value} disagrees with the session value {expected}", path=f"{path}.{key}")
    return value


def parse_scalar(x, path, p):
    res = scalar_parse(x, path=path)
    if not plocal_p(res, p):
        raise InputError(f"{scalar_format(res)} is not {p}-local", path=path)
    return res


def parse_matrix(rows, n_rows, n_cols, path, p):
    if not isinstance(rows, list):
        raise InputError("expected a matrix (a list of rows)", path=path)
    if n_rows == 0 or n_cols == 0:
        if any(row for row in rows):
            raise InputError(f"expected an empty {n_rows}x{n_cols} matrix", path=path)
        return ImmutableMatrix.zeros(n_rows, n_cols)
    if len(rows) != n_rows:
        raise InputError(f"expected {n_rows} rows, got {len(rows)}", path=path)

    values = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise InputError(f"expected a row of {n_cols} scalars", path=f"{path}[{i}]")
        values.append([parse_scalar(x, f"{path}[{i}][{j}]", p) for j, x in enumerate(row)])
    return ImmutableMatrix(values)


def parse_module(obj, path, p):
    if not isinstance(obj, dict):
        raise InputError("expected a module object", path=path)
    if "line" in obj:
        return line(p, _field(obj, "line", path, int))

    rank = _field(obj, "rank", path, int)
    torsion = obj.get("torsion", [])
    if not isinstance(torsion, list) or not all(isinstance(e, int) and e >= 1 for e in torsion):
        raise InputError("torsion must be a list of positive exponents", path=f"{path}.torsion")
    if rank < 0:
        raise InputError("rank must be nonnegative", path=f"{path}.rank")

    underlying = FgModule(p, rank, tuple(sorted(torsion, reverse=True)))
    if list(underlying.torsion) != list(torsion):
        raise InputError("torsion exponents must be nonincreasing", path=f"{path}.torsion")
    n = underlying.n_gens
    psi = parse_matrix(_field(obj, "psi", path), n, n, f"{path}.psi", p)
    M = adams_module(underlying, psi)

    report = validate_object(M)
    if not report.valid_p:
        raise InputError(f"not an Adams module: {'; '.join(report.errors)}", path=f"{path}.psi")
    return M


def parse_bounded(obj, path, p):
    levels = {}
    for i, item in enumerate(_field(obj, "levels", path, list)):
        item_path = f"{path}.levels[{i}]"
        n = _field(item, "degree", item_path, int)
        if n in levels:
            raise InputError(f"duplicate degree {n}", path=f"{item_path}.degree")
        levels[n] = parse_module(_field(item, "module", item_path), f"{item_path}.module", p)

    def level_gens(n):
        return levels[n].n_gens if n in levels else 0

    diffs = {}
    for i, item in enumerate(obj.get("diffs", [])):
        item_path = f"{path}.diffs[{i}]"
        n = _field(item, "degree", item_path, int)
        diffs[n] = parse_matrix(
            _field(item, "matrix", item_path),
            level_gens(n - 1),
            level_gens(n),
            f"{item_path}.matrix",
            p,
        )
    return bounded_complex(p, levels, diffs)


def parse_periodic(obj, path, p, period=None, twist_weight=None):
    N = _agree(obj, "period", period, path)
    w = _agree(obj, "twist_weight", twist_weight, path)
    if N is None or w is None:
        raise InputError("period and twist_weight are required", path=path)

    if "periodify" in obj:
        return periodify(parse_bounded(obj["periodify"], f"{path}.periodify", p), N, w)

    levels_json = _field(obj, "levels", path, list)
    if len(levels_json) != N:
        raise InputError(f"expected {N} window levels, got {len(levels_json)}", path=f"{path}.levels")
    levels = [parse_module(M, f"{path}.levels[{n}]", p) for n, M in enumerate(levels_json)]

    diffs_json = _field(obj, "diffs", path, list)
    if len(diffs_json) != N - 1:
        raise InputError(f"expected {N - 1} window differentials", path=f"{path}.diffs")
    diffs = [
        parse_matrix(d, levels[n - 1].n_gens, levels[n].n_gens, f"{path}.diffs[{n - 1}]", p)
        for n, d in enumerate(diffs_json, start=1)
    ]
    wrap = parse_matrix(_field(obj, "wrap", path), levels[-1].n_gens, levels[0].n_gens, f"{path}.wrap", p)
    return periodic_complex(p, N, w, levels, diffs, wrap)


def parse_complex(obj, path, p, period=None, twist_weight=None):
    kind = _field(obj, "kind", path)
    if kind == "bounded":
        return parse_bounded(obj, path, p)
    if kind == "periodic":
        return parse_periodic(obj, path, p, period, twist_weight)
    raise InputError(f"expected a bounded or periodic complex, got kind {kind!r}", path=f"{path}.kind")


def _degree_components(obj, path, source, target, p):
    res = {}
    for i, item in enumerate(_field(obj, "components", path, list)):
        item_path = f"{path}.components[{i}]"
        n = _field(item, "degree", item_path, int)
        res[n] = parse_matrix(
            _field(item, "matrix", item_path),
            target.level(n).n_gens,
            source.level(n).n_gens,
            f"{item_path}.matrix",
            p,
        )
    return res


def parse_map(obj, path, p, period=None, twist_weight=None):
    source = parse_complex(_field(obj, "source", path), f"{path}.source", p, period, twist_weight)
    target = parse_complex(_field(obj, "target", path), f"{path}.target", p, period, twist_weight)

    if isinstance(source, BoundedComplex) and isinstance(target, BoundedComplex):
        return chain_map(source, target, _degree_components(obj, path, source, target, p))
    if isinstance(source, PeriodicComplex) and isinstance(target, PeriodicComplex):
        comps = _field(obj, "components", path, list)
        if len(comps) != source.period:
            raise InputError(f"expected {source.period} window components", path=f"{path}.components")
        components = [
            parse_matrix(c, target.levels[n].n_gens, source.levels[n].n_gens, f"{path}.components[{n}]", p)
            for n, c in enumerate(comps)
        ]
        return periodic_map(source, target, components)
    raise InputError("source and target must both be bounded or both periodic", path=path)


def parse_unrolled_map(obj, path, p, period=None, twist_weight=None):
    source = parse_complex(_field(obj, "source", path), f"{path}.source", p, period, twist_weight)
    target = parse_complex(_field(obj, "target", path), f"{path}.target", p, period, twist_weight)
    if not isinstance(source, BoundedComplex) or not isinstance(target, PeriodicComplex):
        raise InputError("an unrolled map goes from a bounded to a periodic complex", path=path)
    return unrolled_chain_map(source, target, _degree_components(obj, path, source, target, p))


def parse_document(data, cfg, *, file=None):
    """Builds the object a parsed JSON document describes."""
    path = "$"
    try:
        version = _field(data, "schema_version", path)
        if version != SCHEMA_VERSION:
            raise InputError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})", path="$.schema_version")
        kind = _field(data, "kind", path)
        if kind not in KINDS:
            raise InputError(f"unknown kind {kind!r} (expected one of {KINDS})", path="$.kind")
        p = _agree(data, "p", cfg.p, path)

        if kind == "module":
            return parse_module(_field(data, "module", path), "$.module", p)
        if kind == "map":
            return parse_map(data, path, p, cfg.period, cfg.twist_weight)
        if kind == "unrolled_map":
            return parse_unrolled_map(data, path, p, cfg.period, cfg.twist_weight)
        return parse_complex(data, path, p, cfg.period, cfg.twist_weight)
    except InputError as e:
        if file and not e.file:
            located = InputError(str(e), file=file)
            located.path = e.path
            raise located from e
        raise


def load_object(file, cfg):
    return parse_document(json_load(file), cfg, file=file)


def loads_object(text, cfg, *, file=None):
    return parse_document(json_loads(text, file=file), cfg, file=file)


##
def module_json(M):
    U = M.underlying
    if U.n_gens == 1 and U.free_rank == 1:
        j = weight_of_eigenvalue(M.psi.entries[0, 0], M.p)
        if j is not None:
            return {"line": j}
    return {"rank": U.free_rank, "torsion": list(U.torsion), "psi": matrix_json(M.psi.entries)}


def matrix_json(A):
    return [[scalar_format(A[i, j]) for j in range(A.cols)] for i in range(A.rows)]


def bounded_json(X):
    return {
        "kind": "bounded",
        "levels": [{"degree": n, "module": module_json(M)} for n, M in X.levels],
        "diffs": [{"degree": n, "matrix": matrix_json(d.entries)} for n, d in X.diffs],
    }


def periodic_json(X):
    res = {"kind": "periodic", "period": X.period, "twist_weight": X.twist_weight}
    if X.source is not None:
        source = bounded_json(X.source)
        del source["kind"]
        res["periodify"] = source
        return res
    res.update(
        levels=[module_json(M) for M in X.levels],
        diffs=[matrix_json(d.entries) for d in X.diffs],
        wrap=matrix_json(X.wrap.entries),
    )
    return res


def complex_json(X):
    if isinstance(X, BoundedComplex):
        return bounded_json(X)
    return periodic_json(X)


def to_document(obj):
    """The JSON document (a dict) describing `obj`."""
    head = {"schema_version": SCHEMA_VERSION}
    if isinstance(obj, AdamsModule):
        return {**head, "kind": "module", "p": obj.p, "module": module_json(obj)}
    if isinstance(obj, BoundedComplex):
        return {**head, "p": obj.p, **bounded_json(obj)}
    if isinstance(obj, PeriodicComplex):
        return {**head, "p": obj.p, **periodic_json(obj)}
    if isinstance(obj, PeriodicMap):
        return {
            **head,
            "kind": "map",
            "p": obj.p,
            "source": complex_json(obj.source),
            "target": complex_json(obj.target),
            "components": [matrix_json(f.entries) for f in obj.components],
        }
    if isinstance(obj, (ChainMap, UnrolledChainMap)):
        return {
            **head,
            "kind": "map" if isinstance(obj, ChainMap) else "unrolled_map",
            "p": obj.source.p,
            "source": complex_json(obj.source),
            "target": complex_json(obj.target),
            "components": [{"degree": n, "matrix": matrix_json(f.entries)} for n, f in obj.components],
        }
    raise PyAdamsError(f"cannot serialize {type(obj).__name__}")


def dumps_object(obj):
    return dumps(to_document(obj)) + "\n"


##
