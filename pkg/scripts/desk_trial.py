"""
Desk-scale evolution trial: several seeds at a reduced population
"""

import argparse
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.genome import decode
from src.tools.attractor_atlas import classify_functions
from src.tools.evolution import GaConfig, TerminationReason, run_evolution
from src.utils.file_manager import FileManager
from src.utils.logger import setup_logger


def main():
    """Run the trial and print the success count and Hebb fraction."""
    parser = argparse.ArgumentParser(description='Multi-seed desk-scale evolution trial')

    parser.add_argument('--seeds', default='1,2,3,4,5', help='Comma separated master seeds')
    parser.add_argument('--population', type=int, default=2048, help='Population size')
    parser.add_argument('--hidden', type=int, default=3, help='Hidden nodes')
    parser.add_argument('--generations', type=int, default=300, help='Generation cap')
    parser.add_argument('--workers', type=int, default=4, help='Parallel evaluation processes')
    parser.add_argument('--output-dir', default='runs/desk_trial', help='Output directory')

    args = parser.parse_args()
    setup_logger('src', str(project_root / 'config' / 'lbnn_config.yaml'))

    output_dir = FileManager.ensure_dir(args.output_dir)
    seeds = [int(s) for s in args.seeds.split(',') if s.strip()]

    perfect, hebb, explained = 0, 0, 0
    for seed in seeds:
        config = GaConfig(population_size=args.population, n_nodes=args.hidden + 2,
                          max_generations=args.generations, master_seed=seed)
        log = run_evolution(config, workers=args.workers)
        run_dir = FileManager.ensure_dir(output_dir / f"seed{seed}")
        FileManager.write_fitness_csv(run_dir / 'fitness.csv', log.fitness_rows())
        FileManager.write_json(run_dir / 'summary.json', log.summary())

        line = f"seed {seed}: {log.termination.value} after {len(log.generations)} generations"
        if log.termination is TerminationReason.PERFECT:
            perfect += 1
            final = log.final
            hebb += final.rule_of_best.is_hebb
            atlas = classify_functions(decode(final.best_genome))
            explained += atlas.covers_all_functions()
            line += (f", rule {final.rule_of_best.to_bits()}"
                     f", {len(atlas.pairings)} attractor pairings")
        print(line)

    print("=" * 60)
    print(f"Perfect runs: {perfect}/{len(seeds)}")
    if perfect:
        print(f"Hebb rule among perfect networks: {hebb}/{perfect}")
        print(f"Networks explained by four function pairings: {explained}/{perfect}")
    sys.exit(0 if perfect else 1)


if __name__ == '__main__':
    main()
