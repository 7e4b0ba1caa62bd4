from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='BasisRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('grammar_text', models.TextField()),
                ('grammar_digest', models.CharField(db_index=True, max_length=64)),
                ('n', models.CharField(max_length=255)),
                ('s', models.CharField(max_length=255)),
                ('g', models.CharField(max_length=255)),
                ('c', models.CharField(max_length=255)),
                ('oracle', models.CharField(choices=[('exact', 'Exact'), ('effective', 'Effective')], default='exact', max_length=16)),
                ('subtract_above_j', models.BooleanField(default=False)),
                ('status', models.CharField(choices=[('completed', 'Completed'), ('budget_exceeded', 'Budget exceeded'), ('inconclusive', 'Inconclusive')], default='completed', max_length=32)),
                ('bound', models.CharField(blank=True, max_length=255)),
                ('basis_size', models.PositiveIntegerField(default=0)),
                ('iterations', models.PositiveIntegerField(default=0)),
                ('basis', models.JSONField(blank=True, default=list)),
                ('message', models.TextField(blank=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='BasisIteration',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('index', models.PositiveIntegerField()),
                ('rank', models.CharField(max_length=255)),
                ('pair_left', models.TextField()),
                ('pair_right', models.TextField()),
                ('level', models.PositiveIntegerField()),
                ('control', models.CharField(max_length=255)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='trace', to='workbench.basisrun')),
            ],
            options={
                'ordering': ['run', 'index'],
                'constraints': [models.UniqueConstraint(fields=('run', 'index'), name='unique_basis_iteration')],
            },
        ),
    ]
