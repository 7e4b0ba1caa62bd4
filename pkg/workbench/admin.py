from django.contrib import admin

from .models import BasisIteration, BasisRun


class BasisIterationInline(admin.TabularInline):
    model = BasisIteration
    fields = ('index', 'rank', 'pair_left', 'pair_right', 'level', 'control')
    readonly_fields = fields
    extra = 0
    can_delete = False


@admin.register(BasisRun)
class BasisRunAdmin(admin.ModelAdmin):
    list_display = ('grammar_digest_short', 'n', 's', 'oracle', 'status', 'bound', 'basis_size', 'iterations', 'created_at')
    list_filter = ('oracle', 'status', 'subtract_above_j')
    search_fields = ('grammar_digest', 'grammar_text')
    readonly_fields = ('grammar_digest', 'created_at', 'updated_at')
    inlines = [BasisIterationInline]

    @admin.display(description='Grammar')
    def grammar_digest_short(self, obj):
        return obj.grammar_digest[:12]
