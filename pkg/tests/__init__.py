"""
Tests du simulateur d'apprentissage collaboratif multi-agents

Structure :
- unit/ : Tests unitaires (types, solveurs, tâches, transport, registres, configuration)
- integration/ : Tests d'intégration (exécutions complètes, comparaison, export, entraînement de P)
- e2e/ : Tests end-to-end (commandes de main.py)
"""
