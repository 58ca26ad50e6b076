"""
Package de routes (ligne de commande) du moteur de Schubert.
"""
