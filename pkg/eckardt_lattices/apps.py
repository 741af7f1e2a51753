from django.apps import AppConfig


class EckardtLatticesConfig(AppConfig):
    name = "eckardt_lattices"
    verbose_name = "Eckardt lattices"
