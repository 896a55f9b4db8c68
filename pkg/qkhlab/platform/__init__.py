from qkhlab.platform.matchings import (PlatformMatching, GluingCount, enumerate_matchings, check_parity,
                                       shift_s, k_range, right_weight, gluing_count)
from qkhlab.platform.matchings import PlatformException
from qkhlab.platform.frobenius import (Labels, ONE, X, Surgery, surgery, merge_label, split_labels,
                                       khovanov_terms, khovanov_saddle, annular_degree, annular_terms,
                                       annular_saddle, nesting_order, laurent)
from qkhlab.platform.closures import (CircleType, ClosureShape, Closure, closure_shape, build_closure,
                                      classify_circles, retag)
from qkhlab.platform.bimodule import (CKBimodule, GenLabel, IntVector, build_ck_bimodule, saddle_map,
                                      transport, glue_saddles)
from qkhlab.platform.algebra import PlatformAlgebra, build_platform_algebra
from qkhlab.platform.complex import CKComplex, build_ck_complex
from qkhlab.platform.gluing import Gluing, GluingIso, build_gluing, gluing_iso, minimal_cobordism
