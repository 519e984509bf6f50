"""Exception types raised across the toolkit."""


class SliceTrainerError(Exception):
    """Base class for all domain errors."""


# --- geometry ---

class NonWatertightMesh(SliceTrainerError):
    """An undirected edge has != 2 incident triangles (corrupt input mesh)."""


class DegeneratePlane(SliceTrainerError):
    """Plane normal is not unit length, or degeneracy could not be resolved."""


class DegenerateLoop(SliceTrainerError):
    """Loop points are collinear or too few; signals a tessellation failure."""


class CrossingLoops(SliceTrainerError):
    """Two loops cross each other; signals an upstream chaining bug."""


# --- shape generation ---

class InvalidSpec(SliceTrainerError):
    """Unknown shape id or out-of-range generation parameters."""


# --- task engine ---

class UnknownTask(SliceTrainerError):
    """Task id is not one of the six training tasks."""


class ControlNotAvailable(SliceTrainerError):
    """Event targets a hidden control or mutates state in solution mode."""


class SessionComplete(SliceTrainerError):
    """Raised by next_task after the final task; marks the session end."""


# --- session log ---

class NonMonotonicTimestamp(SliceTrainerError):
    """Event timestamp is earlier than the last recorded one."""


class MalformedLog(SliceTrainerError):
    """Log text or structure cannot be interpreted."""


class VersionMismatch(SliceTrainerError):
    """Log was produced against a different schema version or task bundle."""


# --- assessment ---

class DistinctnessUnreachable(SliceTrainerError):
    """Could not generate pairwise-distinct options within the attempt budget."""
