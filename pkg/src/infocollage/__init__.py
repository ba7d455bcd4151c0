"""infocollage: a desk-scale information-collage workspace engine.

Fragments captured from the web (or typed as notes) live on a zoomable 2D
plane; the engine clusters them by spatial proximity per zoom level, labels
clusters with their most distinctive keywords, and supports similarity
exploration and web search hand-off. See README.md for the HTTP API and CLI.
"""

from .store import Collage, CollageStore, Container, Fragment, Kind, Placement
from .spatial import Viewport

__all__ = [
    "Collage",
    "CollageStore",
    "Container",
    "Fragment",
    "Kind",
    "Placement",
    "Viewport",
]

__version__ = "0.1.0"
