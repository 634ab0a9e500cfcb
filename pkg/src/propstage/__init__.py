"""propstage: a deterministic engine that turns tabletop object tracking into
a staged, chart-driven data presentation.

Physical props are tracked frame to frame, manipulations (appear, lift,
approach, point, ...) become events, and scenes map those events to chart
state and on-screen placement.  The same pipeline runs offline over recorded
streams (byte-stable logs) and live behind a WebSocket service.
"""

__version__ = "0.1.0"

from .core import ChartSpec, DataSeries, Rect, Vec3, VisCommand  # noqa: F401
