__version__ = "1.0.0"

# Version of the emitted report document, bumped on any field change:
# patch for additions, major for renames or removals.
SCHEMA_VERSION = "1.0.0"
