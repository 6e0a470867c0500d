"""
Test package for notary-forge
"""
