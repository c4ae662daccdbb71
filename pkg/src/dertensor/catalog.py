"""Built-in example objects used by the CLI, the tests and the docs.

Entries are constructed on demand and memoized per parameter tuple. Names
accept an optional argument list in parentheses, e.g. "group-algebra(3)" or
"quotient-laurent(1,4)". Setup-producing entries live at the bottom; they
import lazily to keep module import light.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra
from .errors import ParseError
from .scalars import FieldDescriptor, make_field


def _q() -> FieldDescriptor:
    return make_field("rational")


def _basis_table(field, names, products):
    """Table from a dict {(i, j): {k: int_coeff}}; missing pairs are zero."""
    n = len(names)
    z = field.zero()
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in products.items():
        for k, c in vec.items():
            table[i][j][k] = field.from_int(c) if isinstance(c, int) else c
    return Algebra(field, names, table)


def sl2(field: FieldDescriptor | None = None) -> Algebra:
    """The three-dimensional simple Lie algebra in the e, h, f basis."""
    f = field or _q()
    return _basis_table(
        f,
        ["e", "h", "f"],
        {
            (0, 2): {1: 1},  # [e,f] = h
            (2, 0): {1: -1},
            (1, 0): {0: 2},  # [h,e] = 2e
            (0, 1): {0: -2},
            (1, 2): {2: -2},  # [h,f] = -2f
            (2, 1): {2: 2},
        },
    )


def sl2_graded_variant(field: FieldDescriptor | None = None) -> Algebra:
    """sl2 in the rotated basis x = e+f, y = e-f, h; different table, same algebra."""
    f = field or _q()
    return _basis_table(
        f,
        ["x", "y", "h"],
        {
            (2, 0): {1: 2},  # [h,x] = 2y
            (0, 2): {1: -2},
            (2, 1): {0: 2},  # [h,y] = 2x
            (1, 2): {0: -2},
            (0, 1): {2: -2},  # [x,y] = -2h
            (1, 0): {2: 2},
        },
    )


def dual_numbers(field: FieldDescriptor | None = None) -> Algebra:
    """k[x]/(x^2): basis 1, x with x^2 = 0."""
    f = field or _q()
    return _basis_table(f, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})


def group_algebra(n: int, field: FieldDescriptor | None = None) -> Algebra:
    """The group algebra of Z_n, i.e. k[z]/(z^n - 1); basis z^0 ... z^{n-1}."""
    if n < 1:
        raise ParseError(f"group order must be positive, got {n}")
    f = field or _q()
    names = ["1" if i == 0 else ("z" if i == 1 else f"z{i}") for i in range(n)]
    return _basis_table(f, names, {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)})


def zero_product(n: int = 2, field: FieldDescriptor | None = None) -> Algebra:
    """n-dimensional algebra with all products zero; perfect it is not."""
    f = field or _q()
    return _basis_table(f, [f"b{i}" for i in range(n)], {})


def diagonal_matrix(field, entries):
    """Diagonal matrix helper for automorphisms given by eigenvalue lists."""
    from .exactla import Matrix
    n = len(entries)
    z = field.zero()
    vals = [field.from_int(e) if isinstance(e, int) else e for e in entries]
    return Matrix(field, [[vals[i] if i == j else z for j in range(n)] for i in range(n)], n)


def sl2_sign_automorphism(a: Algebra):
    """The period-2 involution negating the two root vectors of sl2."""
    from .gradings import check_automorphism
    return check_automorphism(a, diagonal_matrix(a.field, [-1, 1, -1]), 2)


def sl2_twisted_flagship(field: FieldDescriptor | None = None):
    """sl2 with its sign involution against k[z]/(z^4 - 1) with z -> -z.

    The running 6-dimensional fixed-point example: both sides of the
    restriction isomorphism have dimension 6.
    """
    from .decomposition import Setup
    from .gradings import check_automorphism
    f = field or _q()
    a = sl2(f)
    s = group_algebra(4, f)
    aut1 = sl2_sign_automorphism(a)
    aut2 = check_automorphism(s, diagonal_matrix(f, [1, -1, 1, -1]), 2)
    return Setup(a, s, aut1, aut2, q=1)


def quotient_laurent_setup(n_blocks: int, m: int, field: FieldDescriptor | None = None):
    """sl2 untwisted against k[z]/(z^{Nm} - 1) with z -> omega z.

    A finite quotient of the loop-algebra picture: the grading of S cycles
    through the residues, the degree-one unit is z itself. The field must
    contain a primitive m-th root of unity; the default picks the rationals
    for m <= 2 and the m-th cyclotomic field otherwise.
    """
    from .decomposition import Setup
    from .gradings import check_automorphism
    if n_blocks < 1 or m < 1:
        raise ParseError(f"need positive block count and period, got ({n_blocks}, {m})")
    if field is None:
        field = _q() if m <= 2 else make_field("cyclotomic", m=m)
    from .exactla import Matrix
    a = sl2(field)
    size = n_blocks * m
    s = group_algebra(size, field)
    om = field.root_of_unity(m)
    aut1 = check_automorphism(a, Matrix.identity(field, 3), m)
    aut2 = check_automorphism(s, diagonal_matrix(field, [field.pow(om, k) for k in range(size)]), m)
    return Setup(a, s, aut1, aut2, q=1)


# ---------------------------------------------------------------------------
# named registry


_ALGEBRA_ENTRIES = {
    "sl2": (0, sl2, "three-dimensional simple Lie algebra"),
    "sl2-graded-variant": (0, sl2_graded_variant, "sl2 in a rotated basis"),
    "dual-numbers": (0, dual_numbers, "k[x]/(x^2)"),
    "group-algebra": (1, group_algebra, "k[z]/(z^n - 1), takes (n)"),
    "zero-product": (1, zero_product, "all products zero, takes (n); not perfect"),
}

_SETUP_ENTRIES = {
    "sl2-twisted-flagship": (0, sl2_twisted_flagship,
                             "sl2 with its sign involution over k[z]/(z^4 - 1), period 2"),
    "quotient-laurent": (2, quotient_laurent_setup,
                         "untwisted sl2 over k[z]/(z^{Nm} - 1) with z -> omega z, takes (N, m)"),
}

# evaluation scenes on the genuine Laurent carrier; built by the CLI layer
_SCENE_ENTRIES = {
    "exaBM-laurent": (0, "published extension formula on k<1> (x) k[z^(+-1)], period 4"),
    "last-exa-i": (0, "inverse-map values on k<1> (x) k[z^(+-1)], period 4, unit z"),
    "last-exa-ii": (2, "twisted normal form, inverse style, unit z^-1; takes (m, n)"),
}


def parse_catalog_name(text: str):
    """Split 'name' or 'name(i,j,...)' into the base name and integer args."""
    import re
    m = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9-]*)\s*(?:\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\))?\s*",
                     text)
    if not m:
        raise ParseError(f"malformed catalog name {text!r}")
    base = m.group(1)
    args = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
    return base, args


def _check_arity(base: str, args: tuple, arity: int):
    if len(args) != arity:
        want = "no arguments" if arity == 0 else f"{arity} integer argument(s)"
        raise ParseError(f"catalog entry {base!r} takes {want}, got {args}")


def catalog_algebra(text: str, field: FieldDescriptor | None = None) -> Algebra:
    base, args = parse_catalog_name(text)
    if base not in _ALGEBRA_ENTRIES:
        raise ParseError(f"unknown algebra {base!r}; see catalog list")
    arity, fn, _ = _ALGEBRA_ENTRIES[base]
    _check_arity(base, args, arity)
    return fn(*args, field) if args else fn(field)


def catalog_setup(text: str, field: FieldDescriptor | None = None):
    base, args = parse_catalog_name(text)
    if base not in _SETUP_ENTRIES:
        raise ParseError(f"unknown setup {base!r}; see catalog list")
    arity, fn, _ = _SETUP_ENTRIES[base]
    _check_arity(base, args, arity)
    return fn(*args, field) if args else fn(field)


def is_scene_name(text: str) -> bool:
    try:
        base, _ = parse_catalog_name(text)
    except ParseError:
        return False
    return base in _SCENE_ENTRIES


def catalog_entries() -> list:
    """All registered names with kind and description, stable order."""
    out = []
    for name, (arity, _, desc) in _ALGEBRA_ENTRIES.items():
        out.append({"name": name, "kind": "algebra", "args": arity, "about": desc})
    for name, (arity, _, desc) in _SETUP_ENTRIES.items():
        out.append({"name": name, "kind": "setup", "args": arity, "about": desc})
    for name, (arity, desc) in _SCENE_ENTRIES.items():
        out.append({"name": name, "kind": "scene", "args": arity, "about": desc})
    return out
