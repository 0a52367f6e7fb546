"""
Hierarquia de erros do laboratório.
A CLI converte: ValidationError -> exit 2, RegimeError -> exit 3.
"""


class WidthsLabError(Exception):
    """Erro base do pacote"""


class ValidationError(WidthsLabError, ValueError):
    """Entrada inválida (dimensão, índice, expoente, formato)"""


class BudgetError(ValidationError):
    """Orçamento de otimização vazio ou inválido"""


class RegimeError(WidthsLabError):
    """Parâmetros fora do regime coberto pelas tabelas/teoremas"""


class LimitingCaseError(RegimeError):
    """Parâmetros dentro da banda de guarda de uma desigualdade estrita"""


class GuardError(RegimeError):
    """Limites de escala de mesa excedidos (dimensão, nível, células)"""
