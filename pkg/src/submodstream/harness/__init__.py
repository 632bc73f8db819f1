"""Instance files, generators, baselines, experiment runner, acceptance suite and CLI."""
