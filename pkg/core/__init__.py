"""
Module core -

Ce module regroupe toutes les fonctionnalités clés :
- Types de domaine et scénarios
- Graph learning (montée duale, apprentissage déroulé) et entraînement de P
- Boucle collaborative, orchestration par rondes et transport des paramètres
- Métriques et comparaison des méthodes
"""
