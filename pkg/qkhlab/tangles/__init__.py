from qkhlab.tangles.words import (Slice, SliceKind, TangleWord, validate, resolve, pad, add_strands,
                                  check_vertex, dump_tangle, IDENTITY_SMOOTHING, CAPCUP_SMOOTHING)
from qkhlab.tangles.words import TangleException, TangleFileException, NonEdgeError
from qkhlab.tangles.parser import TangleParser, load_tangle
from qkhlab.tangles.diagram import (Point, Circle, Edge, PlanarDiagram, CrossingSite, WordDiagram,
                                    word_diagram, flip_edges, point, left_point, right_point,
                                    PLAIN, SEAM)
from qkhlab.tangles.annular import (AnnularCircle, AnnularConfig, SaddleKind, SaddleData,
                                    closure_diagram, closure_config, trace_closure, edge_index,
                                    edge_saddle, sign_assignment, orientation, arc_inside)
