"""Code-quality measurement toolkit: class-model extraction, CK/MOOD/QMOOD
metric suites, maintainability criteria with Kiviat reporting, smell
detection strategies, evolution statistics, and Voronoi treemap layout."""

__version__ = "0.1.0"
