# Generated by Django 4.2.9 on 2026-10-17 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CatalogGame',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('n', models.PositiveSmallIntegerField(help_text='Number of voters, dummies included')),
                ('representation', models.CharField(help_text='Game text, e.g. [3;2,1,1]', max_length=200, unique=True)),
                ('quota', models.CharField(max_length=50)),
                ('weights', models.CharField(help_text='Comma-separated weights', max_length=200)),
                ('class_count', models.PositiveSmallIntegerField(default=1, help_text='Number of voter types')),
                ('dummy_count', models.PositiveSmallIntegerField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Catalog Game',
                'verbose_name_plural': 'Catalog Games',
                'ordering': ['n', 'id'],
            },
        ),
        migrations.CreateModel(
            name='PowerResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('index', models.CharField(choices=[('awi', 'Average weight index'), ('ari', 'Average representation index'), ('awti', 'Average weight type index'), ('arti', 'Average representation type index'), ('bzi', 'Banzhaf index'), ('ssi', 'Shapley-Shubik index'), ('msri', 'Minimum sum representation index'), ('msrti', 'Type-revealing minimum sum representation index')], max_length=10)),
                ('power', models.TextField(help_text='Space-separated exact fractions')),
                ('quota_bar', models.CharField(blank=True, help_text='Average quota, representation indices only', max_length=100)),
                ('computed_at', models.DateTimeField(auto_now=True)),
                ('game', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='results', to='voting.cataloggame')),
            ],
            options={
                'ordering': ['game', 'index'],
                'unique_together': {('game', 'index')},
            },
        ),
    ]
