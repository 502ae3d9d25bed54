import logging

from joblib import Parallel, delayed

from CoarseLab.Utils.ConfigReader import ConfigReader

logger = logging.getLogger(__name__)


def parallel_map(function, items, n_jobs=None):
    """
    Apply `function` to every item, preserving input order.

    Work runs on joblib's thread backend so shared read-only tables (word-metric layers,
    halos) are not copied between workers. With a single worker the map runs inline.

    Args:
        function: Callable applied to each item.
        items: Iterable of inputs.
        n_jobs (int, optional): Worker count; defaults to `ConfigReader().threads()`.

    Returns:
        list: results in the order of `items`.
    """
    items = list(items)
    if n_jobs is None:
        n_jobs = ConfigReader().threads()
    if n_jobs <= 1 or len(items) < 2:
        return [function(item) for item in items]
    logger.debug("parallel_map over %d items with %d workers", len(items), n_jobs)
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(function)(item) for item in items)
