"""
Tests for the command-line interface
"""

import json

import pytest
import yaml

from src.core.genome import decode, random_genome
from src.ui.cli_interface import DEFAULT_CONFIG, EXIT_CAPPED, EXIT_ERROR, EXIT_OK, CLIInterface
from src.utils.config_loader import ConfigLoader
from src.utils.file_manager import FileManager

EMPTY_TWO_NODE = '0' * 16


@pytest.fixture
def cli():
    return CLIInterface()


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / 'small.yaml'
    path.write_text(yaml.safe_dump({
        'population_size': 8,
        'elite_count': 2,
        'max_generations': 2,
        'envs_per_generation': 1,
        'init_seeds': [0],
    }))
    return str(path)


@pytest.fixture
def empty_genome_file(tmp_path):
    path = tmp_path / 'empty.txt'
    path.write_text(f"# n=2\n{EMPTY_TWO_NODE}\n")
    return str(path)


class TestParser:
    """Argument parsing."""

    def test_penalty_lambda_forms(self, cli):
        assert cli.parser.parse_args(['evolve']).penalty_lambda is None
        assert cli.parser.parse_args(['evolve', '--penalty-lambda']).penalty_lambda == 0.001
        assert cli.parser.parse_args(['evolve', '--penalty-lambda', '0.5']).penalty_lambda == 0.5

    def test_hidden_maps_to_node_count(self, cli):
        args = cli.parser.parse_args(['evolve', '--hidden', '3', '--seed', '4'])
        overrides = CLIInterface._overrides(args)
        assert overrides['n_nodes'] == 5
        assert overrides['master_seed'] == 4
        assert overrides['population_size'] is None

    def test_no_command(self, cli, capsys):
        assert cli.run([]) == EXIT_ERROR
        assert 'usage' in capsys.readouterr().out

    def test_bad_flag_value(self, cli):
        assert cli.run(['evolve', '--seed', '-1']) == EXIT_ERROR

    def test_help(self, cli):
        assert cli.run(['--help']) == EXIT_OK


class TestEvolveCommand:
    """evolve."""

    def test_small_run_writes_artifacts(self, cli, small_config, tmp_path):
        out = tmp_path / 'run'
        code = cli.run(['evolve', '--config', small_config, '--hidden', '1',
                        '--seed', '3', '--out', str(out)])
        assert code in (EXIT_OK, EXIT_CAPPED)

        summary = json.loads((out / 'summary.json').read_text())
        assert summary['termination'] in ('perfect', 'capped')
        assert len(summary['best_genome']) == 3 * 9 + 4
        assert (out / 'fitness.csv').read_text().startswith(
            'generation,max_fitness,avg_fitness,env_independent_fitness')
        genome_lines = (out / 'best_genomes.txt').read_text().splitlines()
        assert genome_lines[0] == '# n=3'
        assert len(genome_lines) == 1 + summary['generations']

    def test_same_seed_same_fitness_log(self, cli, small_config, tmp_path):
        for name in ('a', 'b'):
            cli.run(['evolve', '--config', small_config, '--hidden', '1',
                     '--seed', '8', '--out', str(tmp_path / name)])
        first = (tmp_path / 'a' / 'fitness.csv').read_bytes()
        assert first == (tmp_path / 'b' / 'fitness.csv').read_bytes()
        assert (tmp_path / 'a' / 'best_genomes.txt').read_text() == \
            (tmp_path / 'b' / 'best_genomes.txt').read_text()

    def test_invalid_population(self, cli, small_config, tmp_path, capsys):
        code = cli.run(['evolve', '--config', small_config, '--population', '7',
                        '--out', str(tmp_path / 'bad')])
        assert code == EXIT_ERROR
        assert 'population_size' in capsys.readouterr().out


class TestAnalyzeCommand:
    """analyze."""

    def test_empty_network(self, cli, empty_genome_file, tmp_path, capsys):
        out = tmp_path / 'analysis'
        assert cli.run(['analyze', empty_genome_file, '--out', str(out)]) == EXIT_OK

        atlas = json.loads((out / 'atlas.json').read_text())
        assert atlas['n'] == 2
        assert atlas['partial'] is False
        assert atlas['functions'] == ['f0']
        assert (out / 'transitions.dot').read_text().startswith('digraph "transitions" {')
        assert (out / 'fixed_points.txt').exists()
        assert 'Attractor pairings: 1' in capsys.readouterr().out

    def test_malformed_network(self, cli, tmp_path, capsys):
        path = tmp_path / 'broken.txt'
        path.write_text('# n=2\n01x\n')
        assert cli.run(['analyze', str(path), '--out', str(tmp_path / 'x')]) == EXIT_ERROR
        assert f"{path}:2:3:" in capsys.readouterr().out

    def test_missing_network(self, cli, tmp_path):
        assert cli.run(['analyze', str(tmp_path / 'missing.json')]) == EXIT_ERROR

    def test_genome_and_decoded_json_agree(self, cli, tmp_path):
        genome = random_genome(3, 5)
        genome_file = tmp_path / 'net.txt'
        genome_file.write_text(f"# n=3\n{genome.to_string()}\n")
        json_file = tmp_path / 'net.json'
        FileManager.write_network(json_file, decode(genome))

        for source, name in ((genome_file, 'from_genome'), (json_file, 'from_json')):
            assert cli.run(['analyze', str(source), '--out', str(tmp_path / name)]) == EXIT_OK

        assert json.loads((tmp_path / 'from_genome' / 'atlas.json').read_text()) == \
            json.loads((tmp_path / 'from_json' / 'atlas.json').read_text())
        assert (tmp_path / 'from_genome' / 'transitions.dot').read_text() == \
            (tmp_path / 'from_json' / 'transitions.dot').read_text()


class TestConfiguration:
    """Config file resolution."""

    def test_shipped_config_is_default(self, cli, empty_genome_file, tmp_path, mocker):
        load = mocker.spy(ConfigLoader, 'load')
        cli.run(['analyze', empty_genome_file, '--out', str(tmp_path / 'a')])
        assert load.call_args.args[0] == str(DEFAULT_CONFIG)

    def test_explicit_config_wins(self, cli, empty_genome_file, small_config, tmp_path, mocker):
        load = mocker.spy(ConfigLoader, 'load')
        cli.run(['analyze', empty_genome_file, '--config', small_config,
                 '--out', str(tmp_path / 'a')])
        assert load.call_args.args[0] == small_config

    def test_shipped_values_apply(self, cli, empty_genome_file, tmp_path, mocker, capsys):
        shipped = tmp_path / 'shipped.yaml'
        shipped.write_text(yaml.safe_dump({'init_seeds': [0, 1]}))
        mocker.patch('src.ui.cli_interface.DEFAULT_CONFIG', shipped)
        assert cli.run(['score', empty_genome_file]) == EXIT_OK
        assert 'Environments:        960' in capsys.readouterr().out


class TestScoreCommand:
    """score."""

    def test_sampled_environments(self, cli, empty_genome_file, tmp_path):
        out = tmp_path / 'score'
        assert cli.run(['score', empty_genome_file, '--envs', '5', '--out', str(out)]) == EXIT_OK
        score = json.loads((out / 'score.json').read_text())
        assert score['env_count'] == 5
        rows = (out / 'environments.csv').read_text().strip().splitlines()
        assert len(rows) == 6

    def test_full_environment_list(self, cli, empty_genome_file, small_config, capsys):
        assert cli.run(['score', empty_genome_file, '--config', small_config]) == EXIT_OK
        assert 'Environments:        480' in capsys.readouterr().out
