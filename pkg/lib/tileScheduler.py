import asyncio
import os
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial
from typing import Callable, List, Sequence, TypeVar
from typing_extensions import TypedDict
from .errorHandler import ValidationException
from .logger import LoggerManager
from .optionsValidator import OptionsValidator
T = TypeVar('T')
THREADS_VARIABLE = 'FASTESCAPE_THREADS'
validator = OptionsValidator()


class SchedulerOpts(TypedDict, total=False):
    """Tile scheduler options."""

    threads: int
    """Requested number of workers, capped by FASTESCAPE_THREADS. Defaults to the cap."""
    chunkSize: int
    """Number of tiles per executor task, default 16."""


def worker_cap() -> int:
    """Returns the worker cap from FASTESCAPE_THREADS, falling back to the processor count."""
    value = os.environ.get(THREADS_VARIABLE)
    if value is None or not value.strip():
        return os.cpu_count() or 1
    try:
        cap = int(value)
    except ValueError:
        raise ValidationException(f'Environment variable {THREADS_VARIABLE} must be an integer', [{
            'parameter': THREADS_VARIABLE, 'message': 'must be an integer', 'range': '[1, inf)'}])
    return validator.validate_integer(cap, None, THREADS_VARIABLE, 1)


def _run_chunk(fn: Callable, chunk: list) -> list:
    return [fn(item) for item in chunk]


class TileScheduler:
    """Runs independent tiles (grid squares, image rows, lemma trials) in parallel. Tiles are grouped into
    chunks in their given order and results come back in the same order, so reductions over the results do
    not depend on the number of workers."""

    def __init__(self, opts: SchedulerOpts = None):
        """Inits the scheduler.

        Args:
            opts: Scheduler options.
        """
        opts = opts or {}
        cap = worker_cap()
        threads = validator.validate_integer(opts.get('threads'), cap, 'threads', 1)
        self._workers = min(threads, cap)
        self._chunkSize = validator.validate_integer(opts.get('chunkSize'), 16, 'chunkSize', 1)
        self._logger = LoggerManager.get_logger('TileScheduler')

    @property
    def workers(self) -> int:
        """Returns the number of workers."""
        return self._workers

    def _create_executor(self) -> Executor:
        if self._workers > 1:
            return ProcessPoolExecutor(max_workers=self._workers)
        return ThreadPoolExecutor(max_workers=1)

    async def map(self, fn: Callable[..., T], tiles: Sequence) -> List[T]:
        """Applies a picklable function to every tile.

        Args:
            fn: Module level function or partial of one, taking a tile.
            tiles: Tiles in reduction order.

        Returns:
            Results in tile order.
        """
        tiles = list(tiles)
        if not len(tiles):
            return []
        chunks = [tiles[i:i + self._chunkSize] for i in range(0, len(tiles), self._chunkSize)]
        self._logger.debug(f'Scheduling {len(tiles)} tiles in {len(chunks)} chunks on {self._workers} workers')
        loop = asyncio.get_event_loop()
        with self._create_executor() as executor:
            results = await asyncio.gather(*[loop.run_in_executor(executor, partial(_run_chunk, fn, chunk))
                                             for chunk in chunks])
        return [item for chunk in results for item in chunk]
