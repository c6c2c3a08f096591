"""
Point d'entrée principal pour Orbifold

Ce script expose le noyau de calcul exact sur les sous-groupes finis de SO(4):
- build: Construit G̃ et vérifie ordre, noyau et quintuplet
- isom: Groupe d'isométries de S³/G (Isom⁺, renversement d'orientation)
- fibrations: Fibrations de Seifert standard préservées
- base: Orbifold de base de la fibration de Hopf et action induite
- singular: Lieu singulier (arêtes, sommets)
- verify: Vérification des tables de classification

La sortie standard ne contient que du JSON (clés triées, "schema": "1");
les diagnostics vont sur la sortie d'erreur.

Codes de sortie: 0 succès, 1 erreur interne, 2 paramètres invalides,
3 fibration de Hopf non préservée, 4 divergence avec les tables.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional

from src.cache.store import GroupCache
from src.exceptions import ConductorMismatchError, ConstraintViolation, NotHopfPreservingError
from src.groups.families import FamilySpec
from src.logger import get_logger
from src.reports.expected import ExpectedTables
from src.reports.models import SCHEMA
from src.reports.runner import ReportRunner
from src.reports.verifier import TableVerifier

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_NOT_HOPF = 3
EXIT_MISMATCH = 4

logger = get_logger("CLI")


def _emit(payload: Dict, compact: bool) -> None:
    """Écrit le JSON sur la sortie standard, clés triées."""
    if compact:
        text = json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    else:
        text = json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)
    sys.stdout.write(text + "\n")


def _cache(args) -> GroupCache:
    if args.no_cache:
        return GroupCache(enabled=False)
    if args.cache:
        return GroupCache(Path(args.cache), enabled=True)
    return GroupCache()


def _spec(args) -> FamilySpec:
    return FamilySpec.create(args.family, m=args.m, n=args.n, r=args.r, s=args.s)


def spec_command(args) -> int:
    """
    Commandes portant sur une spécification (build, isom, fibrations, base, singular).

    Args:
        args: Arguments de la ligne de commande
    """
    spec = _spec(args)
    expected = ExpectedTables(args.tables_file) if args.expected else None
    runner = ReportRunner(_cache(args), args.conductor_override, expected)
    report = runner.run(args.command, spec)
    _emit(report.to_payload(), args.json)
    if any(flag.status == "mismatch" for flag in report.expected):
        return EXIT_MISMATCH
    return EXIT_OK


def verify_command(args) -> int:
    """
    Vérifie les tables demandées; code 4 en cas de divergence.

    Args:
        args: Arguments de la ligne de commande
    """
    verifier = TableVerifier(
        expected=ExpectedTables(args.tables_file),
        cache=_cache(args),
        max_param=args.max_param,
        jobs=args.jobs,
    )
    summary = verifier.run(args.tables)
    _emit(summary.to_payload(), args.json)
    return EXIT_OK if summary.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='orbifold',
        description='Orbifold - Sous-groupes finis de SO(4) et 3-orbifolds sphériques',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples:
  # Ordre et quintuplet de la famille 1 (m=n=1, r=3, s=1)
  python main.py build --family 1 -m 1 -n 1 -r 3 -s 1

  # Groupe d'isométries, comparé aux tables
  python main.py isom --family 22 --expected

  # Base de la fibration de Hopf
  python main.py base --family 2bis -m 2 -n 3

  # Lieu singulier
  python main.py singular --family 5 -m 1

  # Vérification des tables 1 et 4 sur 4 processus
  python main.py verify --tables 1 4 --max-param 3 --jobs 4
        """
    )

    # Options communes
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="JSON compact sur une ligne")
    common.add_argument('--cache', type=str, default=None,
                        help="Dossier du cache (défaut: $ORBIFOLD_CACHE ou data/cache)")
    common.add_argument('--no-cache', action='store_true', help="Désactiver le cache")
    common.add_argument('--tables-file', type=str, default=None,
                        help="Fichier des tables attendues (défaut: data/expected_tables.json)")

    spec_opts = argparse.ArgumentParser(add_help=False)
    spec_opts.add_argument('--family', type=str, required=True,
                           help="Famille (1, 1p, 2, ..., 26pp, ..., 34, 2bis, ...)")
    spec_opts.add_argument('-m', type=int, default=None, help="Paramètre m")
    spec_opts.add_argument('-n', type=int, default=None, help="Paramètre n")
    spec_opts.add_argument('-r', type=int, default=None, help="Paramètre r")
    spec_opts.add_argument('-s', type=int, default=None, help="Paramètre s")
    spec_opts.add_argument('--expected', action='store_true',
                           help="Comparer aux valeurs transcrites des tables")
    spec_opts.add_argument('--conductor-override', type=int, default=None,
                           help="Conducteur imposé (multiple du conducteur requis)")

    # Sous-commandes
    subparsers = parser.add_subparsers(dest='command', help='Commande à exécuter')

    # ========================================================================
    # Commandes: build, isom, fibrations, base, singular
    # ========================================================================
    helps = {
        'build': "Construire G̃ (ordre, noyau, quintuplet)",
        'isom': "Groupe d'isométries de S³/G",
        'fibrations': "Fibrations standard préservées",
        'base': "Orbifold de base et isométries de la fibration de Hopf",
        'singular': "Lieu singulier de S³/G",
    }
    for name, text in helps.items():
        subparsers.add_parser(name, help=text, parents=[common, spec_opts])

    # ========================================================================
    # Commande: verify
    # ========================================================================
    verify_parser = subparsers.add_parser(
        'verify',
        help='Vérifier les tables de classification',
        parents=[common],
    )
    verify_parser.add_argument(
        '--tables',
        type=int,
        nargs='+',
        choices=[1, 2, 3, 4, 5],
        default=[1, 2, 3, 4, 5],
        help="Tables à vérifier (défaut: toutes)"
    )
    verify_parser.add_argument(
        '--max-param',
        type=int,
        default=None,
        help="Borne sur m, n pour la table des ordres (défaut: 3)"
    )
    verify_parser.add_argument(
        '--jobs',
        type=int,
        default=None,
        help="Nombre de processus (défaut: 1)"
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Point d'entrée principal avec parsing des arguments.

    Returns:
        Code de sortie
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INTERNAL

    try:
        if args.command == 'verify':
            if args.max_param is not None and args.max_param < 2:
                sys.stderr.write("Erreur: --max-param doit être >= 2\n")
                return EXIT_INVALID
            return verify_command(args)
        return spec_command(args)
    except (ConstraintViolation, ConductorMismatchError) as e:
        sys.stderr.write(f"Erreur: {e}\n")
        return EXIT_INVALID
    except NotHopfPreservingError as e:
        sys.stderr.write(f"Erreur: {e}\n")
        _emit({
            "schema": SCHEMA,
            "command": args.command,
            "error": "not-hopf-preserving",
            "family": e.family,
            "fibrations": e.preserved,
        }, args.json)
        return EXIT_NOT_HOPF
    except Exception as e:
        logger.exception(f"Erreur interne: {e}")
        sys.stderr.write(f"Erreur interne: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
