from .pipeline import ModulationPipeline
from .run_store import RunStore, read_series
from .timeseries import TimeSeries, GridEmbedding, validate, embed_on_grid, rescale_time

__all__ = [
    "ModulationPipeline",
    "RunStore",
    "read_series",
    "TimeSeries",
    "GridEmbedding",
    "validate",
    "embed_on_grid",
    "rescale_time",
]
