from .rational import Q, fmt, sign
from .unipoly import UniPoly, gcd, squarefree_decomposition, squarefree_part
from .roots import (RealAlgebraic, RootReport, count_roots, isolate_roots, positive_on_open_interval,
                    positivity_report, real_roots, sturm_sequence)
from .bipoly import BiPoly
from .sym2 import Definiteness, Sym2, definiteness
from .boxsign import SignKind, SignVerdict, sign_on_box

__all__ = [
    "Q", "fmt", "sign", "UniPoly", "gcd", "squarefree_decomposition", "squarefree_part",
    "RealAlgebraic", "RootReport", "count_roots", "isolate_roots", "positive_on_open_interval",
    "positivity_report", "real_roots", "sturm_sequence", "BiPoly", "Definiteness", "Sym2",
    "definiteness", "SignKind", "SignVerdict", "sign_on_box",
]
