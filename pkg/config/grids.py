from fractions import Fraction

# Grade de formas fechadas: b_n(id_{p,p}^m) = 1
CLOSED_FORM_EXPONENTS = ['1', '2', '4', 'inf']
CLOSED_FORM_MAX_M = 8

# Instâncias de Pukhov (n, p1, p2)
PUKHOV_INSTANCES = [
    (2, '1', '2'),
    (2, '2', '4'),
    (3, '4', '2'),
]

# Pares de dualidade Bernstein-Gelfand (m, n, p1, p2)
BERN_GELFAND_PAIRS = [
    (4, 2, '2', '2'),
    (4, 4, '1', '2'),
    (5, 3, '1', '2'),
    (4, 2, '4', '2'),
    (4, 3, '2', '1'),
]

# Instâncias do sanduíche b <= c,d <= a (m, n, p1, p2)
SANDWICH_INSTANCES = [
    (3, 2, '1', '2'),
    (4, 2, '2', 'inf'),
    (4, 2, '1', 'inf'),
    (4, 3, '1', '2'),
]

PROBE_CONFIGS = {
    'hilbert': {'d': 2, 't': Fraction(1), 'p1': '2', 'p2': '2'},
    'l1_to_l2': {'d': 2, 't': Fraction(3, 2), 'p1': '1', 'p2': '2'},
}
PROBE_LEVELS = list(range(4, 11))

DECAY_PRESET = {
    'd': 2,
    't': Fraction(3, 2),
    'p1': '1',
    'p2': '2',
    'jmin': 4,
    'jmax': 10,
}
