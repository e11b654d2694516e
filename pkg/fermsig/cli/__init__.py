"""
fermsig command-line tool

Runs mode evolutions, signature tables, scattering sweeps and the property
suite from a JSON configuration, writing CSV or JSON results.
"""
