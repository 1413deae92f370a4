"""
Utility modules for sdcnn.
"""

from .resources import ResourceTracker, TrackedRun

__all__ = [
    "ResourceTracker",
    "TrackedRun",
]
