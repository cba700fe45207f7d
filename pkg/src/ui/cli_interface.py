"""
CLI Interface for the LBNN Workbench
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.errors import LBNNError
from ..core.rng import RandomStreams
from ..tools.attractor_atlas import (classify_functions, export_transition_diagram,
                                     render_fixed_point_table)
from ..tools.evaluator import (enumerate_all_environments, environment_rows, evaluate,
                               sample_environments)
from ..tools.evolution import (PENALTY_VARIANT_LAMBDA, GenerationStats, TerminationReason,
                               run_evolution)
from ..tools.exhaustive_search import exhaustive_search
from ..utils.config_loader import ConfigLoader, RunConfig
from ..utils.file_manager import FileManager
from ..utils.logger import setup_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_STAGNATED = 2
EXIT_CAPPED = 3

TERMINATION_EXIT_CODES = {
    TerminationReason.PERFECT: EXIT_OK,
    TerminationReason.STAGNATED: EXIT_STAGNATED,
    TerminationReason.CAPPED: EXIT_CAPPED,
}

DEFAULT_CONFIG = Path(__file__).resolve().parents[2] / 'config' / 'lbnn_config.yaml'


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


class CLIInterface:
    """Command-line interface for the workbench tools."""

    def __init__(self):
        self.parser = self._create_parser()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create argument parser."""
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--config',
                            help='YAML run configuration file (default: config/lbnn_config.yaml)')
        common.add_argument('--seed', type=_non_negative_int,
                            help='Master seed (falls back to LBNN_SEED, then the config)')
        common.add_argument('--workers', type=_positive_int,
                            help='Parallel evaluation processes (default: 1)')
        common.add_argument('--out',
                            help='Output directory for artifacts')
        common.add_argument('--epochs', type=_positive_int,
                            help='Training passes per function (default: 1)')
        common.add_argument('--verbose', '-v', action='store_true',
                            help='Verbose output')

        parser = argparse.ArgumentParser(
            prog='lbnn',
            description='LBNN Workbench - evolve and explain local binary neural networks',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  # Evolve a 5-node network (3 hidden) with a small population
  python main.py evolve --hidden 3 --population 2048 --seed 1 --out runs/seed1

  # Explain the best network of a run
  python main.py analyze runs/seed1/best_genomes.txt --out runs/seed1

  # Score a network over all 7680 environments
  python main.py score runs/seed1/summary.json

  # Search every network without hidden nodes
  python main.py exhaust --hidden 0
            """
        )
        commands = parser.add_subparsers(dest='command', metavar='COMMAND')

        evolve = commands.add_parser('evolve', parents=[common],
                                     help='Run the genetic algorithm')
        evolve.add_argument('--population', type=_positive_int,
                            help='Population size (even; default: 8192)')
        evolve.add_argument('--hidden', type=_non_negative_int,
                            help='Hidden nodes (default: 3)')
        evolve.add_argument('--generations', type=_positive_int,
                            help='Generation cap (default: 200)')
        evolve.add_argument('--mutation-rate', type=float,
                            help='Per-bit mutation probability (default: 0.01)')
        evolve.add_argument('--elite', type=_non_negative_int,
                            help='Genomes copied unchanged (default: 2)')
        evolve.add_argument('--envs-per-gen', type=_positive_int,
                            help='Environments sampled per generation (default: 5)')
        evolve.add_argument('--penalty-lambda', type=float, nargs='?',
                            const=PENALTY_VARIANT_LAMBDA,
                            help=f'Penalise learnable weights; without a value uses '
                                 f'{PENALTY_VARIANT_LAMBDA} (default: off)')
        evolve.add_argument('--retest-interval', type=_positive_int,
                            help='Generations between environment-independent retests')
        evolve.add_argument('--max-stagnation', type=_positive_int,
                            help='Stop after this many generations without improvement')

        analyze = commands.add_parser('analyze', parents=[common],
                                      help='Fixed points, basins and functions of a network')
        analyze.add_argument('network', help='Network JSON or genome file')
        analyze.add_argument('--input-format', choices=['auto', 'json', 'genome'],
                             default='auto', help='Input file format (default: auto)')
        analyze.add_argument('--index', type=int,
                             help='Genome to analyze in a multi-genome file (default: last)')
        analyze.add_argument('--state-bit-cap', type=_positive_int,
                             help='Free state bits to enumerate per clamp mode (default: 24)')
        analyze.add_argument('--sample', type=_positive_int,
                             help='Sampled start states when the cap is exceeded')

        score = commands.add_parser('score', parents=[common],
                                    help='Environment-independent fitness of a network')
        score.add_argument('network', help='Network JSON or genome file')
        score.add_argument('--input-format', choices=['auto', 'json', 'genome'],
                           default='auto', help='Input file format (default: auto)')
        score.add_argument('--index', type=int,
                           help='Genome to score in a multi-genome file (default: last)')
        score.add_argument('--envs', type=_positive_int,
                           help='Score on this many sampled environments instead of all')

        exhaust = commands.add_parser('exhaust', parents=[common],
                                      help='Score every genome of a small network')
        exhaust.add_argument('--hidden', type=_non_negative_int, default=0,
                             help='Hidden nodes (default: 0)')

        return parser

    def run(self, args: List[str] = None) -> int:
        """
        Run CLI interface.

        Returns:
            Exit status: 0 success or perfect run, 2 stagnated, 3 capped, 1 error
        """
        if args is None:
            args = sys.argv[1:]

        try:
            parsed_args = self.parser.parse_args(args)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_ERROR

        if getattr(parsed_args, 'verbose', False):
            setup_logger('src', str(DEFAULT_CONFIG) if DEFAULT_CONFIG.exists() else None,
                         verbose=True)

        if not parsed_args.command:
            self.parser.print_help()
            return EXIT_ERROR

        handlers = {
            'evolve': self._run_evolve,
            'analyze': self._run_analyze,
            'score': self._run_score,
            'exhaust': self._run_exhaust,
        }
        try:
            return handlers[parsed_args.command](parsed_args)
        except LBNNError as e:
            print(f"Error: {e}")
            return EXIT_ERROR
        except Exception as e:
            logger.error(f"Error running {parsed_args.command}: {e}", exc_info=True)
            print(f"Error: {e}")
            return EXIT_ERROR

    # -- configuration

    @staticmethod
    def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
        hidden = getattr(args, 'hidden', None)
        return {
            'master_seed': args.seed,
            'workers': args.workers,
            'out': args.out,
            'training_passes': args.epochs,
            'population_size': getattr(args, 'population', None),
            'n_nodes': hidden + 2 if hidden is not None else None,
            'max_generations': getattr(args, 'generations', None),
            'mutation_rate': getattr(args, 'mutation_rate', None),
            'elite_count': getattr(args, 'elite', None),
            'envs_per_generation': getattr(args, 'envs_per_gen', None),
            'learnable_penalty_lambda': getattr(args, 'penalty_lambda', None),
            'retest_interval': getattr(args, 'retest_interval', None),
            'stagnation_limit': getattr(args, 'max_stagnation', None),
            'state_bit_cap': getattr(args, 'state_bit_cap', None),
        }

    def _load_config(self, args: argparse.Namespace) -> RunConfig:
        config_file = args.config or (str(DEFAULT_CONFIG) if DEFAULT_CONFIG.exists() else None)
        config = ConfigLoader.load(config_file, self._overrides(args))
        logger.debug(f"Run configuration: {config}")
        return config

    # -- commands

    def _run_evolve(self, args: argparse.Namespace) -> int:
        """Run the genetic algorithm and write fitness.csv, genomes and summary."""
        config = self._load_config(args)
        out = FileManager.ensure_dir(config.out)

        def report(stats: GenerationStats):
            env = (f"{float(stats.env_independent_fitness):.6f}"
                   if stats.env_independent_fitness is not None else '-')
            print(f"gen {stats.generation:4d}  max {float(stats.max_fitness):.4f}  "
                  f"avg {stats.avg_fitness:.4f}  env-independent {env}")

        log = run_evolution(config.to_ga_config(), workers=config.workers, on_generation=report)

        FileManager.write_fitness_csv(out / 'fitness.csv', log.fitness_rows())
        FileManager.write_genomes(out / 'best_genomes.txt',
                                  [stats.best_genome for stats in log.generations])
        summary = log.summary()
        FileManager.write_json(out / 'summary.json', summary)

        print(f"\nTermination: {summary['termination']} after {summary['generations']} generations")
        print(f"Best genome: {summary['best_genome']}")
        print(f"Rule: {summary['rule']}{' (Hebb)' if summary['rule_is_hebb'] else ''}")
        print(f"Artifacts written to {out}")
        return TERMINATION_EXIT_CODES[log.termination]

    def _run_analyze(self, args: argparse.Namespace) -> int:
        """Write the attractor atlas, the fixed point table and the transition diagram."""
        config = self._load_config(args)
        spec, _ = FileManager.load_network(args.network, args.input_format, args.index)
        rng = RandomStreams(config.master_seed).fresh('analysis-starts')
        atlas = classify_functions(spec, cap=config.state_bit_cap, sample_size=args.sample, rng=rng)

        out = FileManager.ensure_dir(config.out)
        FileManager.write_json(out / 'atlas.json', atlas.to_dict())
        table = render_fixed_point_table(atlas)
        FileManager.write_text(out / 'fixed_points.txt', table)
        FileManager.write_text(out / 'transitions.dot', export_transition_diagram(atlas))

        print(table)
        functions = ', '.join(f"f{f}" for f in atlas.represented_functions()) or 'none'
        print(f"Input-clamped fixed points: {atlas.fixed_point_count()}")
        print(f"Attractor pairings: {len(atlas.pairings)} (functions: {functions})")
        print(f"Artifacts written to {out}")
        return EXIT_OK

    def _run_score(self, args: argparse.Namespace) -> int:
        """Print the environment-independent (or sampled) score of a network."""
        config = self._load_config(args)
        spec, _ = FileManager.load_network(args.network, args.input_format, args.index)
        if args.envs:
            envs = sample_environments(RandomStreams(config.master_seed).fresh('score-environments'),
                                       args.envs)
        else:
            envs = enumerate_all_environments(init_seeds=config.init_seeds)
        report = evaluate(spec, envs, config.training_passes)

        print(f"Environments:        {report.env_count}")
        print(f"Errors (N):          {report.errors}")
        print(f"Fitness 1/(1+N):     {report.fitness}")
        print(f"Mean env fitness:    {float(report.mean_env_fitness):.6f}")
        print(f"Errors per function: {list(report.per_function_errors)}")

        if args.out:
            out = FileManager.ensure_dir(args.out)
            FileManager.write_json(out / 'score.json', report.to_dict())
            FileManager.write_environment_csv(out / 'environments.csv',
                                              environment_rows(envs, report))
            print(f"Artifacts written to {out}")
        return EXIT_OK

    def _run_exhaust(self, args: argparse.Namespace) -> int:
        """Score every genome of a network with the given hidden node count."""
        config = self._load_config(args)
        result = exhaustive_search(n=args.hidden + 2, init_seeds=config.init_seeds,
                                   passes=config.training_passes, workers=config.workers,
                                   seed=config.master_seed)
        print(result.render())
        if args.out:
            out = FileManager.ensure_dir(args.out)
            FileManager.write_json(out / 'exhaust.json', result.to_dict())
            FileManager.write_genomes(out / 'witness.txt', [result.witness])
        return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    return CLIInterface().run(argv)


if __name__ == '__main__':
    sys.exit(main())
