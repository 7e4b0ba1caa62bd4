import hashlib

from django.db import models


class TimeStampedModel(models.Model):
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class BasisRun(TimeStampedModel):
    """One candidate-basis computation and its outcome.

    Parameters and the bound are arbitrary-precision, so they are kept as
    decimal strings.
    """

    class Oracle(models.TextChoices):
        EXACT = 'exact', 'Exact'
        EFFECTIVE = 'effective', 'Effective'

    class Status(models.TextChoices):
        COMPLETED = 'completed', 'Completed'
        BUDGET_EXCEEDED = 'budget_exceeded', 'Budget exceeded'
        INCONCLUSIVE = 'inconclusive', 'Inconclusive'

    grammar_text = models.TextField()
    grammar_digest = models.CharField(max_length=64, db_index=True)
    n = models.CharField(max_length=255)
    s = models.CharField(max_length=255)
    g = models.CharField(max_length=255)
    c = models.CharField(max_length=255)
    oracle = models.CharField(max_length=16, choices=Oracle.choices, default=Oracle.EXACT)
    subtract_above_j = models.BooleanField(default=False)
    status = models.CharField(max_length=32, choices=Status.choices, default=Status.COMPLETED)
    bound = models.CharField(max_length=255, blank=True)
    basis_size = models.PositiveIntegerField(default=0)
    iterations = models.PositiveIntegerField(default=0)
    basis = models.JSONField(default=list, blank=True)
    message = models.TextField(blank=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self) -> str:
        return f'{self.grammar_digest[:12]} n={self.n} s={self.s} ({self.get_status_display()})'

    @staticmethod
    def digest(text: str) -> str:
        return hashlib.sha256(text.encode('utf-8')).hexdigest()


class BasisIteration(models.Model):
    run = models.ForeignKey(BasisRun, on_delete=models.CASCADE, related_name='trace')
    index = models.PositiveIntegerField()
    rank = models.CharField(max_length=255)
    pair_left = models.TextField()
    pair_right = models.TextField()
    level = models.PositiveIntegerField()
    control = models.CharField(max_length=255)

    class Meta:
        ordering = ['run', 'index']
        constraints = [
            models.UniqueConstraint(fields=['run', 'index'], name='unique_basis_iteration'),
        ]

    def __str__(self) -> str:
        return f'iteration {self.index} of run {self.run_id}'
