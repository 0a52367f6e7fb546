import sys
from pathlib import Path

# pacote pip -> nome de import
REQUIRED = {
    'numpy': 'numpy',
    'scipy': 'scipy',
    'pandas': 'pandas',
    'loguru': 'loguru',
    'python-dotenv': 'dotenv',
}


def create_directory_structure(root: Path = Path('.')):
    """Cria diretórios de saída e de logs"""
    for directory in ('data/logs', 'data/results'):
        (root / directory).mkdir(parents=True, exist_ok=True)
    print("✅ Estrutura de diretórios criada")


def create_env_file(root: Path = Path('.')):
    """Cria arquivo .env se não existir"""
    env_file = root / '.env'

    if env_file.exists():
        print("⚠️  Arquivo .env já existe")
        return

    env_content = """# Paralelismo (workers das buscas e dos experimentos)
WIDTHS_LAB_THREADS=1

# Log Level
LOG_LEVEL=INFO

# Log em arquivo (data/logs)
LOG_TO_FILE=false
"""

    env_file.write_text(env_content)
    print("✅ Arquivo .env criado")


def check_dependencies() -> list:
    """Verifica dependências instaladas"""
    missing = []
    for package, module in REQUIRED.items():
        try:
            __import__(module)
        except ImportError:
            missing.append(package)

    if missing:
        print(f"⚠️  Dependências faltando: {', '.join(missing)}")
        print("Execute: pip install -r requirements.txt")
    else:
        print("✅ Todas as dependências instaladas")
    return missing


def create_gitignore(root: Path = Path('.')):
    """Cria .gitignore"""
    gitignore_content = """# Python
__pycache__/
*.py[cod]
.pytest_cache/
.mypy_cache/
.coverage
htmlcov/
venv/

# Resultados e logs
data/
*.log

# Ambiente
.env

# IDE
.vscode/
.idea/
"""

    (root / '.gitignore').write_text(gitignore_content)
    print("✅ Arquivo .gitignore criado")


def main() -> int:
    print("=" * 60)
    print(" " * 18 + "WIDTHS LAB SETUP")
    print("=" * 60)
    print()

    create_directory_structure()
    create_env_file()
    create_gitignore()

    print()
    missing = check_dependencies()

    print()
    print("=" * 60)

    if not missing:
        print("✅ Setup completo!")
        print()
        print("Próximos passos:")
        print("1. Execute: python main.py verify (bateria de verificações)")
        print("2. Execute: python main.py matrix --m 5 --p1 1 --p2 2")
        print("3. Execute: python -m pytest tests/")
    else:
        print("⚠️  Instale as dependências primeiro:")
        print("pip install -r requirements.txt")

    print("=" * 60)
    return 0 if not missing else 1


if __name__ == '__main__':
    sys.exit(main())
