"""
File manager for run artifacts: genome text, network JSON, CSV tables, reports
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..core.errors import DimensionMismatchError, GenomeFormatError, NetworkFileError
from ..core.genome import Genome, decode
from ..core.network import NetworkSpec

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FITNESS_COLUMNS = ['generation', 'max_fitness', 'avg_fitness', 'env_independent_fitness']
ENVIRONMENT_COLUMNS = ['function_order', 'train_pair_order', 'test_pair_order',
                       'learn_cycles', 'init_seed', 'errors']
HEADER_PREFIX = '# n='


class FileManager:
    """Reads and writes every artifact the workbench produces."""

    @staticmethod
    def ensure_dir(path: PathLike) -> Path:
        directory = Path(path)
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    # -- genome text

    @staticmethod
    def write_genomes(path: PathLike, genomes: Sequence[Genome]) -> str:
        """
        Write genomes one per line under a "# n=<n>" header.

        Args:
            path: Output file
            genomes: Genomes of one node count

        Returns:
            Path written
        """
        if not genomes:
            raise ValueError("No genomes to write")
        n = genomes[0].n
        if any(g.n != n for g in genomes):
            raise DimensionMismatchError("All genomes in a file must share the node count")
        lines = [f"{HEADER_PREFIX}{n}"] + [g.to_string() for g in genomes]
        Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')
        logger.debug(f"Wrote {len(genomes)} genomes to {path}")
        return str(path)

    @staticmethod
    def read_genomes(path: PathLike) -> List[Genome]:
        """
        Read a genome file; blank lines and other comment lines are skipped.

        Raises:
            NetworkFileError: with line and column on malformed content
        """
        n: Optional[int] = None
        genomes: List[Genome] = []
        text = FileManager._read_text(path)
        for number, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(HEADER_PREFIX):
                try:
                    n = int(line[len(HEADER_PREFIX):])
                except ValueError:
                    raise NetworkFileError(str(path), f"bad header {line!r}", line=number, column=1)
                continue
            if line.startswith('#'):
                continue
            try:
                genomes.append(Genome.from_string(line, n))
            except (GenomeFormatError, ValueError) as e:
                column = getattr(e, 'column', None)
                if column is not None:
                    column += len(raw) - len(raw.lstrip())
                raise NetworkFileError(str(path), str(e), line=number, column=column) from e
        if not genomes:
            raise NetworkFileError(str(path), "no genomes found")
        return genomes

    # -- network JSON

    @staticmethod
    def write_json(path: PathLike, data: Dict[str, Any]) -> str:
        Path(path).write_text(json.dumps(data, indent=2, sort_keys=False) + '\n', encoding='utf-8')
        return str(path)

    @staticmethod
    def read_json(path: PathLike) -> Any:
        text = FileManager._read_text(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise NetworkFileError(str(path), e.msg, line=e.lineno, column=e.colno) from e

    @staticmethod
    def write_network(path: PathLike, spec: NetworkSpec) -> str:
        return FileManager.write_json(path, spec.to_dict())

    @staticmethod
    def read_network(path: PathLike) -> NetworkSpec:
        """
        Read a network JSON document (a bare spec, or a run summary with `best_network`).

        Raises:
            NetworkFileError: on malformed JSON or an invalid network document
        """
        data = FileManager.read_json(path)
        if isinstance(data, dict) and 'best_network' in data:
            data = data['best_network']
        try:
            return NetworkSpec.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise NetworkFileError(str(path), f"invalid network document: {e}") from e

    @staticmethod
    def load_network(path: PathLike, input_format: str = 'auto',
                     index: Optional[int] = None) -> Tuple[NetworkSpec, Optional[Genome]]:
        """
        Load a network from JSON or genome text.

        Args:
            path: Network file
            input_format: 'json', 'genome' or 'auto' (by extension, then by content)
            index: Genome to use in a multi-genome file (default: the last one)

        Returns:
            (NetworkSpec, the genome it came from or None for JSON input)
        """
        if input_format == 'auto':
            suffix = Path(path).suffix.lower()
            if suffix == '.json':
                input_format = 'json'
            elif suffix in ('.txt', '.genome', '.genomes'):
                input_format = 'genome'
            else:
                first = FileManager._read_text(path).lstrip()[:1]
                input_format = 'json' if first in ('{', '[') else 'genome'

        if input_format == 'json':
            return FileManager.read_network(path), None
        if input_format != 'genome':
            raise ValueError(f"Unknown input format: {input_format}")

        genomes = FileManager.read_genomes(path)
        position = len(genomes) - 1 if index is None else index
        if not -len(genomes) <= position < len(genomes):
            raise NetworkFileError(str(path), f"genome index {index} out of range "
                                              f"(file holds {len(genomes)})")
        genome = genomes[position]
        return decode(genome), genome

    # -- tables

    @staticmethod
    def write_fitness_csv(path: PathLike, rows: Sequence[Dict[str, Any]]) -> str:
        """Write fitness.csv; missing env-independent values stay empty cells."""
        frame = pd.DataFrame(list(rows), columns=FITNESS_COLUMNS)
        frame.to_csv(path, index=False, float_format='%.10g')
        return str(path)

    @staticmethod
    def read_fitness_csv(path: PathLike) -> pd.DataFrame:
        try:
            frame = pd.read_csv(path)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise NetworkFileError(str(path), f"unreadable CSV: {e}") from e
        missing = [c for c in FITNESS_COLUMNS if c not in frame.columns]
        if missing:
            raise NetworkFileError(str(path), f"missing columns {missing}", line=1)
        return frame

    @staticmethod
    def write_environment_csv(path: PathLike, rows: Sequence[Dict[str, Any]]) -> str:
        pd.DataFrame(list(rows), columns=ENVIRONMENT_COLUMNS).to_csv(path, index=False)
        return str(path)

    @staticmethod
    def read_environment_csv(path: PathLike) -> pd.DataFrame:
        return pd.read_csv(path, dtype={'train_pair_order': str, 'test_pair_order': str})

    # -- plain text

    @staticmethod
    def write_text(path: PathLike, text: str) -> str:
        Path(path).write_text(text, encoding='utf-8')
        return str(path)

    @staticmethod
    def _read_text(path: PathLike) -> str:
        try:
            return Path(path).read_text(encoding='utf-8')
        except FileNotFoundError as e:
            raise NetworkFileError(str(path), "file not found") from e
        except UnicodeDecodeError as e:
            raise NetworkFileError(str(path), f"not a text file ({e.reason})") from e
