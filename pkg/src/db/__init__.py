"""
Package de stockage (fixtures et rapports) du moteur de Schubert.
"""
