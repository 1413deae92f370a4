"""
Experiment commands behind the CLI subcommands.

Each module registers one `cli.<command>` task; sdcnn.cli looks them up
through the registry.
"""
