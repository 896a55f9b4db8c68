from qkhlab.hochschild.chains import (QCHComplex, qch, ch, twist_bimodule, trace_relations, hh0_quotient,
                                      qhh0_map, intertwining_defect)
from qkhlab.hochschild.chains import HochschildException
from qkhlab.hochschild.total import qch_total, qhh, window_for
from qkhlab.hochschild.trace import TensorTrace, TraceSwap, trace_tau, trace_tau_prime
