"""
Engine modules: profiles, geometry, criterion and liminf estimation
"""
