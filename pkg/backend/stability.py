# stability.py - command error handling and timed resource scopes
import gc
import logging
import time
import traceback
from functools import wraps

from errors import ProofRejected, WorkbenchError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT_ERROR = 2


def stable_command(func):
    """Run a CLI command and map failures to exit codes: 1 for rejected proofs, 2 for bad input"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
            return EXIT_OK if result is None else result
        except ProofRejected as e:
            logger.error(f"❌ {func.__name__}: {e}")
            return EXIT_REJECTED
        except (WorkbenchError, OSError, ValueError) as e:
            logger.error(f"❌ {func.__name__}: {e}")
            return EXIT_INPUT_ERROR
        except Exception as e:
            logger.error(f"Command error in {func.__name__}: {e}")
            logger.error(f"Traceback: {traceback.format_exc()}")
            return EXIT_INPUT_ERROR
    return wrapper


def safe_memory_operation(func):
    """Collect garbage after large semantic computations"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except MemoryError:
            logger.error(f"Memory error in {func.__name__}")
            raise
        finally:
            gc.collect()
    return wrapper


class ManagedResource:
    """Timed scope; `elapsed` holds the duration once the block exits"""

    def __init__(self, resource_name):
        self.resource_name = resource_name
        self.start_time = time.perf_counter()
        self.elapsed = 0.0

    def __enter__(self):
        logger.debug(f"Acquiring resource: {self.resource_name}")
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time
        if exc_type:
            logger.error(f"Error with resource {self.resource_name}: {exc_val}")
        else:
            logger.debug(f"Released resource {self.resource_name} after {self.elapsed:.2f}s")
        return False
