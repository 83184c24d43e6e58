"""Exact decision procedures for ultrametric-preserving transforms.

Thin dict-level wrapper over the native module: matrices, functions, and
families travel as the same JSON shapes the CLI reads and writes.
"""

import json as _json

try:
    from . import _umtk as _native
except ImportError:  # built tree: the extension sits on sys.path directly
    import _umtk as _native

InputError = _native.InputError
PreconditionError = _native.PreconditionError
UndecidedError = _native.UndecidedError
InternalError = _native.InternalError

__all__ = [
    "InputError",
    "PreconditionError",
    "UndecidedError",
    "InternalError",
    "classify_space",
    "classify_function",
    "evaluate",
    "transform",
    "dual_witness",
    "probe_fab",
    "probe_snowflake",
    "min_falsifying_exponent",
    "decompose",
    "zero_gap_radius",
    "find_separator",
    "power_separator_exponent",
    "is_k_separating_on",
    "counterexample_space",
    "ultrametric_by_family",
    "gen_ultrametric",
    "gen_metric",
    "gen_pseudoultrametric",
    "gen_function",
]


def _arg(value):
    """Matrix/function/family arguments: dicts and lists pass as JSON text."""
    if isinstance(value, str):
        return value
    return _json.dumps(value)


def _out(text):
    return None if text is None else _json.loads(text)


def classify_space(matrix):
    """Axiom verdicts with witnesses plus the derived class memberships."""
    return _out(_native.classify_space(_arg(matrix)))


def classify_function(fn):
    """increasing/amenable/doubling verdicts and the preservation classes."""
    return _out(_native.classify_function(_arg(fn)))


def evaluate(fn, t, precision=60, max_bits=4096):
    """Certified enclosure {lo, hi, exact} of the transform at t."""
    return _out(_native.evaluate(_arg(fn), str(t), precision, max_bits))


def transform(matrix, fn):
    """Entrywise application, with the classification of the result."""
    return _out(_native.transform(_arg(matrix), _arg(fn)))


def dual_witness(matrix):
    """Witness package breaking the triangle inequality, or None if ultrametric."""
    return _out(_native.dual_witness(_arg(matrix)))


def probe_fab(matrix):
    """Ultrametricity test through three-step transforms over value pairs."""
    return _out(_native.probe_fab(_arg(matrix)))


def probe_snowflake(matrix, alpha, precision=60, max_bits=4096):
    """Does d^alpha keep the triangle inequality? Verdict may be undecided."""
    return _out(_native.probe_snowflake(_arg(matrix), str(alpha), precision, max_bits))


def min_falsifying_exponent(matrix, tolerance="1/1073741824", precision=60, max_bits=4096):
    """Smallest triangle-breaking exponent, or None for ultrametrics."""
    return _out(
        _native.min_falsifying_exponent(_arg(matrix), str(tolerance), precision, max_bits)
    )


def decompose(matrix):
    """Threshold-of-ultrametric factorization of a strict pseudoultrametric."""
    return _out(_native.decompose(_arg(matrix)))


def zero_gap_radius(matrix, fn):
    """Erasure radius of an increasing transform on an ultrametric, or None."""
    return _out(_native.zero_gap_radius(_arg(matrix), _arg(fn)))


def find_separator(family, t1, t2, k="2", precision=60, max_bits=4096):
    """Index of the first member with k*f(t1) < f(t2), or None."""
    return _native.find_separator(_arg(family), str(t1), str(t2), str(k), precision, max_bits)


def power_separator_exponent(t1, t2, k="2", precision=60, max_bits=4096):
    """Smallest integer exponent separating t1 < t2 by factor k, as a string."""
    return _native.power_separator_exponent(str(t1), str(t2), str(k), precision, max_bits)


def is_k_separating_on(family, k, pairs, precision=60, max_bits=4096):
    """Separation verdict over the supplied (t1, t2) pairs with margins."""
    str_pairs = [(str(a), str(b)) for a, b in pairs]
    return _out(_native.is_k_separating_on(_arg(family), str(k), str_pairs, precision, max_bits))


def counterexample_space(family, t1, t2, precision=60, max_bits=4096):
    """Metric no member exposes as non-ultrametric, with its certificate."""
    return _out(
        _native.counterexample_space(_arg(family), str(t1), str(t2), precision, max_bits)
    )


def ultrametric_by_family(family, matrix, certified_2_separating=False, precision=60,
                          max_bits=4096):
    """Ultrametricity of a metric decided through the family's transforms."""
    return _out(
        _native.ultrametric_by_family(
            _arg(family), _arg(matrix), certified_2_separating, precision, max_bits
        )
    )


def gen_ultrametric(seed, n, max_num=12, max_den=4):
    """Seeded random ultrametric as a standard matrix object."""
    return _out(_native.gen_ultrametric(seed, n, max_num, max_den))


def gen_metric(seed, n, max_num=12, max_den=4):
    """Seeded random metric: {space, ultrametric flag}."""
    return _out(_native.gen_metric(seed, n, max_num, max_den))


def gen_pseudoultrametric(seed, n, zero_fraction="1/2", max_num=12, max_den=4):
    """Seeded random pseudoultrametric with zero-distance classes."""
    return _out(_native.gen_pseudoultrametric(seed, n, str(zero_fraction), max_num, max_den))


def gen_function(seed, cls, max_num=12, max_den=4):
    """Seeded random piecewise-affine transform shaped to the named class."""
    return _out(_native.gen_function(seed, cls, max_num, max_den))
