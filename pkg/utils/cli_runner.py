import argparse

from typing import Any, Dict, List, Optional, Sequence

from core.errors import ConfigurationError

COMMANDS = ('generate', 'train', 'run', 'compare')


def parse_seeds(value: str) -> List[int]:
    """'1,2,3' ou '1-5' -> liste de graines"""
    seeds: List[int] = []
    try:
        for part in value.split(','):
            part = part.strip()
            if not part:
                continue
            if '-' in part[1:]:
                start, end = part.split('-', 1)
                seeds.extend(range(int(start), int(end) + 1))
            else:
                seeds.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Liste de graines invalide : '{value}' (ex : 1,2,3 ou 1-5)")
    if not seeds:
        raise argparse.ArgumentTypeError("Liste de graines vide")
    return seeds


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='Fichier de configuration (.yaml, .yml, .json)')
    parser.add_argument('--task', choices=['regression', 'classification'], help='Type de tâche')
    parser.add_argument('--method', help='Méthode : no-colla, original-gl, unrolled-gl, fixed-colla')
    parser.add_argument('--seed', type=parse_seeds, help='Graines de test (ex : 1,2,3 ou 1-5)')
    parser.add_argument('--out', help='Répertoire de sortie (défaut : output)')
    parser.add_argument('--p-file', dest='p_file', help='Fichier de la diagonale P entraînée')
    parser.add_argument('--transport', choices=['memory', 'socket'], help='Transport des messages')
    parser.add_argument('--workers', type=int, help='Nombre de workers (threads)')
    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        default='INFO',
        help='Niveau de logging (défaut : INFO)'
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Simulateur d'apprentissage collaboratif multi-agents",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples d'utilisation :
    python main.py generate --config config/regression.yaml       # Données et graphe de référence
    python main.py train --config config/regression.yaml          # Entraîne P
    python main.py run --config config/regression.yaml --method unrolled-gl --p-file P.json
    python main.py compare --task regression --seed 1-5           # Tableau des quatre méthodes
    COLLAB_BIND=127.0.0.1:0 python main.py run --task regression --transport socket
"""
    )
    subparsers = parser.add_subparsers(dest='command', metavar='{' + ','.join(COMMANDS) + '}')
    helps = {
        'generate': 'Génère les données de chaque graine et le graphe de référence',
        'train': 'Entraîne la diagonale P sur les graines d\'entraînement',
        'run': 'Exécute une méthode et écrit les artefacts',
        'compare': 'Compare les quatre méthodes sur les mêmes données',
    }
    for command in COMMANDS:
        _add_common_arguments(subparsers.add_parser(command, help=helps[command]))
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse les arguments de ligne de commande

    Returns:
        Arguments parsés
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        raise SystemExit(0)
    if args.config is None and args.task is None:
        raise ConfigurationError("Indiquez --config ou --task")
    return args


def build_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Options de ligne de commande -> valeurs de la section experiment"""
    return {
        'task': args.task,
        'method': args.method,
        'seeds': args.seed,
        'output_dir': args.out,
        'transport': args.transport,
        'workers': args.workers,
    }
