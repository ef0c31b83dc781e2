"""Instance files and builtin instance families."""
