from qkhlab.groupring.group import CyclicGroup, GroupRingElem, gr_add, gr_mul, gr_neg
from qkhlab.groupring.group import GroupRingException, GroupMismatchError, UnsupportedHomologyError
from qkhlab.groupring.matrix import BasisElement, GRMatrix, label_to_json, restrict_scalars, restrict_scalars_sparse
from qkhlab.groupring.snf import smith_normal_form, invariant_factors
from qkhlab.groupring.complexes import (GradedComplexZG, ChainMapZG, HomologyGroup, HomologySummary,
                                        homology, homology_all, mapping_cone, identity_map,
                                        block_matrix, specialize_q1, poincare_polynomial)
from qkhlab.groupring.elimination import Cokernel, cokernel, invert_matrix, add_into
