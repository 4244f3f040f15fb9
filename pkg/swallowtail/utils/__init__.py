"""swallowtail utilities."""
