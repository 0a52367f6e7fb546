from io import StringIO
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import json
import sys
import pandas as pd
from loguru import logger

from core.exceptions import ValidationError
from core.utils import float_repr

FORMATS = ('csv', 'json', 'svg-plot-data')


class ReportGenerator:
    """Gera as saídas primárias (CSV, JSON, SVG) com a configuração efetiva no cabeçalho"""

    @staticmethod
    def config_comment(config: Dict) -> str:
        return f"# config: {json.dumps(config, sort_keys=True, default=str)}\n"

    @staticmethod
    def to_csv(rows: List[Dict], columns: Sequence[str], config: Dict) -> str:
        """CSV com cabeçalho obrigatório e floats em precisão total"""
        df = pd.DataFrame(rows, columns=list(columns))
        buffer = StringIO()
        df.to_csv(buffer, index=False, lineterminator='\n')
        return ReportGenerator.config_comment(config) + buffer.getvalue()

    @staticmethod
    def read_csv(text: str) -> pd.DataFrame:
        """Leitura inversa de to_csv (linhas de comentário ignoradas)"""
        body = ''.join(line + '\n' for line in text.splitlines() if not line.startswith('#'))
        return pd.read_csv(StringIO(body), float_precision='round_trip')

    @staticmethod
    def to_json(payload: Dict, config: Dict) -> str:
        document = {'config': config}
        document.update(payload)
        return json.dumps(document, indent=2, default=str) + '\n'

    @staticmethod
    def to_svg(series: Dict[str, List[Tuple[float, float]]], config: Dict, title: str = '') -> str:
        """Coordenadas brutas (x, y) de cada série como <polyline>"""
        xs = [x for points in series.values() for x, _ in points] or [0.0]
        ys = [y for points in series.values() for _, y in points] or [0.0]
        view = (min(xs), min(ys), max(max(xs) - min(xs), 1e-12), max(max(ys) - min(ys), 1e-12))
        lines = [
            ReportGenerator.config_comment(config).rstrip('\n'),
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{" ".join(float_repr(v) for v in view)}" preserveAspectRatio="none">',
        ]
        if title:
            lines.append(f'  <title>{title}</title>')
        for name, points in series.items():
            coords = ' '.join(f"{float_repr(x)},{float_repr(y)}" for x, y in points)
            lines.append(f'  <polyline data-series="{name}" points="{coords}" fill="none" stroke="black"/>')
        lines.append('</svg>')
        return '\n'.join(lines) + '\n'

    @staticmethod
    def write(text: str, output: Optional[str] = None) -> None:
        """Arquivo quando `output` é dado, senão stdout"""
        if output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f"Relatório gravado em: {path}")


def check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValidationError(f"unknown output format '{fmt}', expected one of {FORMATS}")
    return fmt
