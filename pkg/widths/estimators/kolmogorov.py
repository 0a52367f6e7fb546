"""
Números de Kolmogorov pela dualidade d_n(T) = c_n(T*) em dimensão finita:

    d_n(T) = inf_{dim N < n} sup_{||y||_{tgt'} <= 1, y ⊥ N} ||T* y||_{src'}

O subespaço N^⊥ (dimensão m_out - n + 1) é amostrado no contradomínio.
"""
from widths.estimators.gelfand import RestrictedNormEstimator


class KolmogorovEstimator(RestrictedNormEstimator):
    kind = 'kolmogorov'

    def __init__(self):
        super().__init__("Kolmogorov")

    def _problem(self, T):
        return T.matrix.conj().T, T.tgt.dual(), T.src.dual()
