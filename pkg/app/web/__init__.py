"""Web layer package (HTTP routes)."""
