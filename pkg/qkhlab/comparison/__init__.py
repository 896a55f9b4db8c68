from qkhlab.comparison.maps import XiMap, a_map, c_map, build_xi, wrapped_diagram
from qkhlab.comparison.maps import ComparisonException
from qkhlab.comparison.certificates import (Certificate, verify_chain_map, verify_quasi_iso, verify_deformed_face,
                                            verify_a_trace, verify_trace_square, adeg_defect,
                                            deformed_faces, seam_rotation)
