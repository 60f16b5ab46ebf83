from django.db import models

from voting.games import WeightedGame, classify_voters, desirability, format_game, parse_game


class CatalogGame(models.Model):
    """A weighted game stored in canonical (minimum-sum) form"""
    n = models.PositiveSmallIntegerField(help_text='Number of voters, dummies included')
    representation = models.CharField(max_length=200, unique=True, help_text='Game text, e.g. [3;2,1,1]')
    quota = models.CharField(max_length=50)
    weights = models.CharField(max_length=200, help_text='Comma-separated weights')
    class_count = models.PositiveSmallIntegerField(default=1, help_text='Number of voter types')
    dummy_count = models.PositiveSmallIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['n', 'id']
        verbose_name = 'Catalog Game'
        verbose_name_plural = 'Catalog Games'

    def __str__(self):
        return self.representation

    @property
    def game(self) -> WeightedGame:
        return parse_game(self.representation)

    @classmethod
    def store(cls, game: WeightedGame) -> 'CatalogGame':
        partition = desirability(game).partition
        entry, _ = cls.objects.update_or_create(
            representation=format_game(game),
            defaults={
                'n': game.n,
                'quota': str(game.quota),
                'weights': ','.join(str(w) for w in game.weights),
                'class_count': partition.t,
                'dummy_count': len(classify_voters(game).dummies),
            },
        )
        return entry


class PowerResult(models.Model):
    """Exact power vector of one game under one index"""
    INDEX_CHOICES = [
        ('awi', 'Average weight index'),
        ('ari', 'Average representation index'),
        ('awti', 'Average weight type index'),
        ('arti', 'Average representation type index'),
        ('bzi', 'Banzhaf index'),
        ('ssi', 'Shapley-Shubik index'),
        ('msri', 'Minimum sum representation index'),
        ('msrti', 'Type-revealing minimum sum representation index'),
    ]

    game = models.ForeignKey(CatalogGame, on_delete=models.CASCADE, related_name='results')
    index = models.CharField(max_length=10, choices=INDEX_CHOICES)
    power = models.TextField(help_text='Space-separated exact fractions')
    quota_bar = models.CharField(max_length=100, blank=True, help_text='Average quota, representation indices only')
    computed_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['game', 'index']
        unique_together = ['game', 'index']

    def __str__(self):
        return f'{self.game} {self.index}'

    @classmethod
    def store(cls, game: WeightedGame, vector) -> 'PowerResult':
        entry, _ = cls.objects.update_or_create(
            game=CatalogGame.store(game),
            index=vector.kind.value,
            defaults={
                'power': ' '.join(str(e) for e in vector.entries),
                'quota_bar': str(vector.average.quota_bar) if vector.average is not None else '',
            },
        )
        return entry
