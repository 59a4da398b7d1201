"""Command-line harness: single runs, fronts, comparisons and audits."""

from .front import FrontResult, approximate_front, compare, nondominated_filter, start_points

__all__ = ["FrontResult", "approximate_front", "compare", "nondominated_filter", "start_points"]
