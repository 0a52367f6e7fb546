import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, '')
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        return default


def _env_flag(name: str, default: bool) -> bool:
    raw = os.getenv(name, '')
    if not raw.strip():
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


class Settings:
    # Paralelismo (WIDTHS_LAB_THREADS limita os workers)
    THREADS = max(1, _env_int('WIDTHS_LAB_THREADS', 1))

    # ✅ ORÇAMENTO DE OTIMIZAÇÃO
    DEFAULT_RESTARTS = 256
    DEFAULT_MAX_ITER = 500
    DEFAULT_SEED = 0
    ASCENT_REL_TOL = 1e-10                     # melhora relativa mínima
    MIN_STEP = 1e-14
    SCREEN_ITER = 60                           # iterações na triagem de candidatos
    REFINE_TOP = 4                             # candidatos refinados localmente
    REFINE_STEPS = 40                          # passos de busca local por candidato
    POLISH_MAX_PARAMS = 16                     # Nelder-Mead só com poucos parâmetros
    INNER_RANDOM_STARTS = 24
    MAX_SPARSE_STARTS = 600                    # vetores esparsos por subespaço

    # ✅ TOLERÂNCIAS
    GUARD_BAND = 1e-9                          # desigualdades estritas
    MONOTONE_CLAMP_TOL = 1e-9
    DUALITY_TOLERANCE = 0.1                    # produtos de dualidade (10%)
    HILBERT_REL_TOL = 1e-8
    HEURISTIC_REL_TOL = 1e-3
    SANDWICH_TOL = 1e-9
    PIETSCH_TOL = 1e-9
    RANK_REL_TOL = 1e-8
    BASIS_RANK_TOL = 1e-8
    FIT_CONDITION_WARN = 1e6

    # ✅ GUARDS (escala de mesa)
    MAX_MATRIX_DIM = 16
    MAX_DUALITY_DIM = 12
    SIGN_ENUMERATION_MAX_DIM = 16
    MAX_COORDINATE_CANDIDATES = 256
    FNORM_MAX_D = 3
    FNORM_MAX_LEVEL = 10
    FNORM_MAX_CELLS = 2 ** 24
    THRESHOLD_MAX_J = 10
    MAX_FIELD_ENTRIES = 2_000_000

    # Thresholding
    DENSE_DEPTH = 2                            # níveis além de J no gerador denso
    DECAY_TRIALS = 20

    # Bateria de verificação (conjuntos de parâmetros válidos por check)
    RATE_CHECK_SAMPLES = 10_000
    D1_COLLAPSE_SAMPLES = 1_000
    MAX_DRAWS_PER_SAMPLE = 20                  # sorteios por conjunto válido antes de desistir

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_TO_FILE = _env_flag('LOG_TO_FILE', False)
    LOG_DIR = os.getenv('LOG_DIR', 'data/logs')

    # Saídas
    OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'data/results')


settings = Settings()
