"""
Package principal du moteur exact de calcul de Schubert fibré.
"""
