from qkhlab.qtqft.labels import QLabeling, V_PLUS, V_MINUS, gen_basis, basis_in_degree, labeling, label_names
from qkhlab.qtqft.labels import QTQFTException
from qkhlab.qtqft.surfaces import (ClosedSurface, eval_closed, bundt_coevaluation, evaluation_merge,
                                   bundt_torus, torus_offset)
from qkhlab.qtqft.identification import (BasisIdentification, identify_basis, wrap_closure, wrap_order,
                                         restrict_to_word, lift_exponents)
from qkhlab.qtqft.identification import BasisIdentificationError
from qkhlab.qtqft.saddles import (ExponentTable, OracleAgreement, saddle_images, classical_saddle_matrix,
                                  annular_saddle_matrix, saddle_matrix_oracle, saddle_matrix_fast,
                                  local_key, cube_edges, verify_oracle_agreement)
from qkhlab.qtqft.saddles import ExponentTableError
from qkhlab.qtqft.complexes import RotationCheck, qakc, akc, kc, verify_rotation
