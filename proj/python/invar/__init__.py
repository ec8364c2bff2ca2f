"""Python access to the invar core: presentations, verification, dimension
tables, Hilbert series and the randomized determinant checks.

Every function returns plain Python data (dicts and lists) decoded from the
core's JSON reports.
"""

import json as _json

from . import _invar
from ._invar import ResourceLimit

__all__ = [
    "ResourceLimit",
    "presentation",
    "presentation_text",
    "verify",
    "verify_presentation",
    "invariant_dims",
    "hilbert_series",
    "check_conjecture",
    "fuzz_det",
    "sl2_example",
    "cli",
]


def presentation(group, n, p, e=1):
    """Generators and relations of the invariant ring of U_n ("un") or B_n ("bn")."""
    return _json.loads(_invar.presentation_json(group, n, p, e))


def presentation_text(group, n, p, e=1, format="text"):
    """The presentation as readable text or as a CAS script (format="cas")."""
    return _invar.presentation_text(group, n, p, e, format)


def verify(group, n, p, e=1, jobs=1):
    """Kernel, elimination-structure and minimality report for a generated presentation."""
    return _json.loads(_invar.verify_json(group, n, p, e, jobs))


def verify_presentation(data, jobs=1):
    """Same report for a presentation given as a dict (the format of presentation())."""
    return _json.loads(_invar.verify_presentation_json(_json.dumps(data), jobs))


def invariant_dims(group, n, p, e=1, cutoff=8, jobs=1):
    """{(d, e): dim} for every bidegree with d + e <= cutoff, by exact linear algebra."""
    table = _json.loads(_invar.dims_json(group, n, p, e, cutoff, jobs))
    return {(c["d"], c["e"]): c["dim"] for c in table["cells"]}


def hilbert_series(group, n, p, e=1, cutoff=12):
    """{(d, e): coefficient} from the closed-form bigraded Hilbert series."""
    data = _json.loads(_invar.hilbert_json(group, n, p, e, cutoff))
    return {(c["d"], c["e"]): int(c["dim"]) for c in data["cells"]}


def check_conjecture(n, p, e=1, cutoff=8, jobs=1):
    """Generation report for GL_n with the Dickson invariants, their duals and the u_j."""
    return _json.loads(_invar.conjecture_json(n, p, e, cutoff, jobs))


def fuzz_det(seed=0, max_n=5, trials=200):
    """Randomized test of the determinant identity over Z, Z/4, Z/6, F_2, F_9."""
    return _json.loads(_invar.fuzz_json(seed, max_n, trials))


def sl2_example(cutoff=6):
    """The SL_2(F_3) report: orbit of x1 y2 - x2 y1 and the generation deficit."""
    return _json.loads(_invar.sl2_json(cutoff))


def cli(*args):
    """Runs the command line in-process; returns (exit_code, stdout, stderr)."""
    return _invar.cli([str(a) for a in args])
