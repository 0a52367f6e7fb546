#!/usr/bin/env python3
"""
Widths Lab - larguras de matrizes, taxas de Bernstein e aproximação por limiarização
Uso: python main.py {matrix|rates|threshold|verify} [opções]
"""
import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from loguru import logger

from config.grids import DECAY_PRESET
from config.settings import settings
from core.exceptions import RegimeError, ValidationError
from core.exponents import Exponent, ParamSet
from core.operator_norm import OptimBudget
from experiments.decay_experiment import DECAY_COLUMNS, fit_decay, run_decay_experiment
from experiments.report_generator import ReportGenerator, check_format
from experiments.width_tables import run_width_table
from rates.classifiers import (
    BERNSTEIN_CLASSIFIERS,
    WEYL_CLASSIFIERS,
    approximation_rate_mixed,
    nonlinear_width_rate,
)
from rates.regions import compare_bernstein_weyl
from thresholding.generators import GENERATORS
from verification.invariant_suite import FAULTS, InvariantSuite
from widths.operators import parse_kinds

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_REGIME = 3

MATRIX_COLUMNS = ['kind', 'n', 'value', 'direction', 'converged']
VERIFY_COLUMNS = ['name', 'passed', 'detail']

DEFAULTS: Dict[str, Dict] = {
    'matrix': {'m': 4, 'p1': '1', 'p2': '2', 'kinds': 'all', 'format': 'csv'},
    'rates': {'scale': 'mixed', 'd': 2, 't': '1', 'p1': '2', 'p2': '2', 'format': 'json'},
    'threshold': {
        'd': DECAY_PRESET['d'],
        't': str(DECAY_PRESET['t']),
        'p1': DECAY_PRESET['p1'],
        'p2': DECAY_PRESET['p2'],
        'jmin': DECAY_PRESET['jmin'],
        'jmax': DECAY_PRESET['jmax'],
        'trials': settings.DECAY_TRIALS,
        'generator': 'random-dense',
        'complex': False,
        'fit': False,
        'format': 'csv',
    },
    'verify': {'fault': None, 'format': 'csv'},
}
COMMON_DEFAULTS = {'seed': settings.DEFAULT_SEED, 'restarts': settings.DEFAULT_RESTARTS,
                   'max_iter': settings.DEFAULT_MAX_ITER}


def configure_logging() -> None:
    """Só o ponto de entrada configura sinks; a saída primária nunca recebe logs"""
    logger.remove()
    logger.add(
        sys.stderr,
        level=settings.LOG_LEVEL,
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {message}",
    )
    if settings.LOG_TO_FILE:
        logger.add(
            f"{settings.LOG_DIR}/widths_lab_{{time}}.log",
            rotation="1 day",
            retention="7 days",
            level=settings.LOG_LEVEL,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {message}",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='widths-lab', description='Widths Lab')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='arquivo JSON com parâmetros (flags têm precedência)')
    common.add_argument('--format', choices=['csv', 'json', 'svg-plot-data'])
    common.add_argument('--output', help='arquivo de saída (stdout se omitido)')
    common.add_argument('--seed', type=int)
    common.add_argument('--restarts', type=int)
    common.add_argument('--max-iter', dest='max_iter', type=int)

    sub = parser.add_subparsers(dest='command', required=True)

    matrix = sub.add_parser('matrix', parents=[common], help='tabela de larguras de uma matriz')
    matrix.add_argument('--m', type=int)
    matrix.add_argument('--p1')
    matrix.add_argument('--p2')
    matrix.add_argument('--kinds', help="'all' ou lista separada por vírgula")

    rates = sub.add_parser('rates', parents=[common], help='classificação das taxas assintóticas')
    rates.add_argument('--scale', choices=['mixed', 'isotropic'])
    rates.add_argument('--d', type=int)
    rates.add_argument('--t')
    rates.add_argument('--p1')
    rates.add_argument('--p2')

    threshold = sub.add_parser('threshold', parents=[common], help='experimento de decaimento da limiarização')
    threshold.add_argument('--d', type=int)
    threshold.add_argument('--t')
    threshold.add_argument('--p1')
    threshold.add_argument('--p2')
    threshold.add_argument('--jmin', type=int)
    threshold.add_argument('--jmax', type=int)
    threshold.add_argument('--trials', type=int)
    threshold.add_argument('--generator', choices=list(GENERATORS))
    threshold.add_argument('--complex', action='store_const', const=True, default=None)
    threshold.add_argument('--fit', action='store_const', const=True, default=None)

    verify = sub.add_parser('verify', parents=[common], help='bateria de verificações cruzadas')
    verify.add_argument('--fault', choices=list(FAULTS))
    return parser


def load_config_file(path: Optional[str]) -> Dict:
    if not path:
        return {}
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as e:
        raise ValidationError(f"cannot read config file '{path}': {e}")
    except json.JSONDecodeError as e:
        raise ValidationError(f"config file '{path}' is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ValidationError(f"config file '{path}' must hold a JSON object")
    return data


def effective_config(args: argparse.Namespace) -> Dict:
    """padrões < arquivo --config < flags"""
    command = args.command
    config = dict(COMMON_DEFAULTS)
    config.update(DEFAULTS[command])
    file_config = load_config_file(args.config)
    unknown = sorted(set(file_config) - set(config))
    if unknown:
        raise ValidationError(f"unknown config key(s) for '{command}': {', '.join(unknown)}")
    config.update(file_config)
    for key in config:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    config['command'] = command
    check_format(config['format'])
    return config


def budget_of(config: Dict) -> OptimBudget:
    return OptimBudget(int(config['restarts']), int(config['max_iter']), int(config['seed'])).validate()


def params_of(config: Dict) -> ParamSet:
    return ParamSet.build(config['d'], str(config['t']), str(config['p1']), str(config['p2']))


def cmd_matrix(config: Dict) -> Tuple[str, int]:
    kinds = parse_kinds(config['kinds'])
    p1, p2 = Exponent.parse(str(config['p1'])), Exponent.parse(str(config['p2']))
    estimates = run_width_table(int(config['m']), p1, p2, kinds, budget_of(config))
    rows = [e.to_row() for e in estimates]

    fmt = config['format']
    if fmt == 'csv':
        return ReportGenerator.to_csv(rows, MATRIX_COLUMNS, config), EXIT_OK
    if fmt == 'json':
        return ReportGenerator.to_json({'widths': [e.to_dict() for e in estimates]}, config), EXIT_OK
    series = {kind: [(e.n, e.value) for e in estimates if e.kind == kind] for kind in kinds}
    return ReportGenerator.to_svg(series, config, title='widths'), EXIT_OK


def _classify(func, *args) -> Dict:
    try:
        return func(*args).to_dict()
    except RegimeError as e:
        return {'error': str(e)}


def cmd_rates(config: Dict) -> Tuple[str, int]:
    scale = config['scale']
    if scale not in BERNSTEIN_CLASSIFIERS:
        raise ValidationError(f"unknown scale '{scale}', expected one of {sorted(BERNSTEIN_CLASSIFIERS)}")
    params = params_of(config)
    exit_code = EXIT_OK

    try:
        bernstein = BERNSTEIN_CLASSIFIERS[scale](params).to_dict()
    except RegimeError as e:
        logger.error(f"Classificação de Bernstein indisponível: {e}")
        bernstein = {'error': str(e)}
        exit_code = EXIT_REGIME

    report = {
        'params': params.to_dict(),
        'scale': scale,
        'bernstein': bernstein,
        'weyl': _classify(WEYL_CLASSIFIERS[scale], params),
        'nonlinear_width': _classify(nonlinear_width_rate, params, scale),
    }
    if scale == 'mixed':
        report['approximation'] = _classify(approximation_rate_mixed, params)
        report['region'] = compare_bernstein_weyl(params.p1, params.p2).to_dict()

    fmt = config['format']
    if fmt == 'json':
        return ReportGenerator.to_json(report, config), exit_code
    if fmt == 'csv':
        rows = []
        for table in ('bernstein', 'weyl', 'nonlinear_width', 'approximation'):
            entry = report.get(table)
            if entry is None:
                continue
            rows.append({
                'table': table,
                'case': entry.get('case', ''),
                'alpha': entry.get('alpha', ''),
                'beta_lo': entry.get('beta_lo', ''),
                'beta_hi': entry.get('beta_hi', ''),
                'two_sided': entry.get('two_sided', ''),
                'error': entry.get('error', ''),
            })
        columns = ['table', 'case', 'alpha', 'beta_lo', 'beta_hi', 'two_sided', 'error']
        return ReportGenerator.to_csv(rows, columns, config), exit_code
    raise ValidationError("format 'svg-plot-data' is not available for rates")


def cmd_threshold(config: Dict) -> Tuple[str, int]:
    params = params_of(config)
    J_range = list(range(int(config['jmin']), int(config['jmax']) + 1))
    rows = run_decay_experiment(
        params,
        J_range,
        trials=int(config['trials']),
        seed=int(config['seed']),
        generator=config['generator'],
        complex_values=bool(config['complex']),
    )
    fit = fit_decay(rows) if config['fit'] else None
    fit_block = None
    if config['fit']:
        if fit is None:
            logger.warning("Ajuste indisponível: menos de dois níveis com erro positivo")
            fit_block = {'alpha_hat': None}
        else:
            fit_block = {'alpha_hat': -fit.slope, **fit.to_dict()}
            logger.info(f"α̂ = {-fit.slope:.4f} (resíduo {fit.residual:.3e})")

    fmt = config['format']
    if fmt == 'csv':
        text = ReportGenerator.to_csv([row.to_row() for row in rows], DECAY_COLUMNS, config)
        if fit_block is not None:
            text += f"# fit: {json.dumps(fit_block, sort_keys=True)}\n"
        return text, EXIT_OK
    if fmt == 'json':
        payload = {'rows': [row.to_row() for row in rows]}
        if fit_block is not None:
            payload['fit'] = fit_block
        return ReportGenerator.to_json(payload, config), EXIT_OK
    series = {
        'max_error': [(row.J, row.max_error) for row in rows],
        'max_nonzeros': [(row.J, row.max_nonzeros) for row in rows],
    }
    return ReportGenerator.to_svg(series, config, title='threshold decay'), EXIT_OK


def cmd_verify(config: Dict) -> Tuple[str, int]:
    suite = InvariantSuite(budget_of(config), fault=config['fault'])
    results = suite.run()
    exit_code = EXIT_OK if suite.all_passed else EXIT_CHECK_FAILED
    for result in results:
        if not result.passed:
            logger.error(f"Verificação falhou: {result.name} | {result.detail} | testemunha {result.witness}")

    fmt = config['format']
    if fmt == 'csv':
        rows = [{'name': r.name, 'passed': r.passed, 'detail': r.detail} for r in results]
        return ReportGenerator.to_csv(rows, VERIFY_COLUMNS, config), exit_code
    if fmt == 'json':
        payload = {'passed': suite.all_passed, 'checks': [r.to_dict() for r in results]}
        return ReportGenerator.to_json(payload, config), exit_code
    raise ValidationError("format 'svg-plot-data' is not available for verify")


COMMANDS = {
    'matrix': cmd_matrix,
    'rates': cmd_rates,
    'threshold': cmd_threshold,
    'verify': cmd_verify,
}


def main(argv: List[str] = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse: --help sai com 0, uso inválido com 2
        return EXIT_OK if e.code == 0 else EXIT_VALIDATION

    try:
        # === 1. CONFIGURAÇÃO ===
        config = effective_config(args)
        logger.info(f"Comando: {args.command} | seed={config['seed']} | restarts={config['restarts']}")

        # === 2. EXECUÇÃO ===
        text, exit_code = COMMANDS[args.command](config)

        # === 3. SAÍDA ===
        ReportGenerator.write(text, args.output)
        return exit_code

    except ValidationError as e:
        logger.error(f"Erro de validação: {e}")
        return EXIT_VALIDATION
    except RegimeError as e:
        logger.error(f"Fora do regime: {e}")
        return EXIT_REGIME


if __name__ == '__main__':
    sys.exit(main())
