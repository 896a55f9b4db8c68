from qkhlab.burnside.correspondences import (GSet, CorrElement, Correspondence, TwoMorphism, compose,
                                             linearize)
from qkhlab.burnside.correspondences import BurnsideException
from qkhlab.burnside.cube import (BurnsideCube, CoherenceReport, burnside_cube, edge_correspondence,
                                  face_bijection, face_two_iso, ladybug_point, verify_coherence)
