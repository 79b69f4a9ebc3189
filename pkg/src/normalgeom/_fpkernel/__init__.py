"""F_p dense-polynomial kernel with backend selection at import time.

The compiled Cython extension is preferred; the pure-Python twin is used
when the extension is missing or when ``NORMALGEOM_PURE=1`` is set in the
environment.  ``BACKEND`` names the active implementation.

The compiled kernel requires p < 2**31 (products must fit a 64-bit word);
callers with larger moduli go through the pure functions directly.
"""

import os

from . import pure

COMPILED_MAX_P = 1 << 31

if os.environ.get("NORMALGEOM_PURE") == "1":
    _impl = pure
else:
    try:
        from . import core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND


def _wrap(name):
    fast = getattr(_impl, name)
    slow = getattr(pure, name)
    if fast is slow:
        return slow

    def dispatch(*args):
        # modulus is the last positional argument in every kernel function
        if args[-1] < COMPILED_MAX_P:
            return fast(*args)
        return slow(*args)

    dispatch.__name__ = name
    return dispatch


trim = pure.trim
poly_from_ints = _wrap("poly_from_ints")
add = _wrap("add")
sub = _wrap("sub")
neg = _wrap("neg")
scale = _wrap("scale")
mul = _wrap("mul")
divmod_poly = _wrap("divmod_poly")
rem = _wrap("rem")
monic = _wrap("monic")
gcd = _wrap("gcd")
resultant = _wrap("resultant")
evaluate = _wrap("evaluate")
roots = _wrap("roots")
derivative = _wrap("derivative")
pth_root = _wrap("pth_root")
squarefree_part = _wrap("squarefree_part")
distinct_root_degree = _wrap("distinct_root_degree")
powmod = _wrap("powmod")


def resultant_gcd_mismatches(p, max_deg):
    if p < COMPILED_MAX_P:
        return _impl.resultant_gcd_mismatches(p, max_deg)
    return pure.resultant_gcd_mismatches(p, max_deg)
