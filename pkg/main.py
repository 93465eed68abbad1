"""
Point d'entrée principal du simulateur

Usage :
    python main.py generate --config config/regression.yaml
    python main.py train    --config config/regression.yaml
    python main.py run      --config config/regression.yaml --method unrolled-gl
    python main.py compare  --config config/classification.yaml --seed 1-5
    python main.py --help

Codes de sortie : 0 succès, 2 configuration, 3 convergence, 4 entrées/sorties, 1 autre.
"""
import sys
from pathlib import Path
from typing import Optional, Sequence

from utils.cli_runner import build_overrides, parse_arguments
from utils.decorators import safe_run
from utils.logging_utils import setup_logging
from core.sim_runner import cmd_compare, cmd_generate, cmd_run, cmd_train, load_config, print_contract


@safe_run
def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_arguments(argv)
    overrides = build_overrides(args)
    logger = setup_logging(args.log_level, Path(args.out or 'output') / 'logs')

    print("\n" + "=" * 70)
    print("Simulateur d'apprentissage collaboratif multi-agents")
    print("=" * 70)

    config = load_config(Path(args.config) if args.config else None, **overrides)
    logger.info(f"Commande '{args.command}' ({config.task}, {config.method}), configuration {config.digest[:8]}")
    print_contract(config)

    p_file = Path(args.p_file) if args.p_file else None
    match args.command:
        case 'generate':
            cmd_generate(config)
        case 'train':
            cmd_train(config, p_file)
        case 'run':
            cmd_run(config, p_file)
        case 'compare':
            cmd_compare(config, p_file)
    return 0


if __name__ == '__main__':
    sys.exit(main())
