import csv
import io
import json

from django.core.management.color import no_style


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


class TableExporter:
    EXPORT_FIELDS = []
    FORMATS = ["json", "table", "csv"]

    @property
    def export_keys(self):
        return [field[0] if isinstance(field, tuple) else field for field in self.EXPORT_FIELDS]

    @property
    def export_human_fields(self):
        return [field[1] if isinstance(field, tuple) else field for field in self.EXPORT_FIELDS]

    def __init__(self, format, style=None):
        if format not in self.FORMATS:
            raise ValueError(f"format {format} is not supported")
        self.format = format
        self.style = style or no_style()

    def export(self, source):
        return getattr(self, f"generate_{self.format}")(source)

    def get_rows(self, source):
        return list(source)

    def _generate_table(self, rows):
        table = []
        table.append(self.export_human_fields)
        for row in rows:
            table.append([_cell(row.get(key)) for key in self.export_keys])
        return table

    def generate_json(self, source):
        return json.dumps(self.get_rows(source), indent=2) + "\n"

    def generate_csv(self, source):
        f = io.StringIO()
        writer = csv.writer(f)
        writer.writerows(self._generate_table(self.get_rows(source)))
        return f.getvalue()

    def generate_table(self, source):
        table = self._generate_table(self.get_rows(source))
        widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
        lines[0] = self.style.MIGRATE_HEADING(lines[0])
        return "\n".join(lines) + "\n"


class HodgeTableExporter(TableExporter):
    EXPORT_FIELDS = [
        ("case", "Case"),
        ("weights", "Weights"),
        ("degree", "Degree"),
        ("h22_prim", "h22_prim"),
        ("hodge", "Primitive Hodge numbers"),
    ]


class PartitionExporter(TableExporter):
    EXPORT_FIELDS = [("denominators", "Denominators")]

    def get_rows(self, source):
        return [{"denominators": list(partition)} for partition in source]


class ReportExporter(TableExporter):
    EXPORT_FIELDS = [
        ("id", "Id"),
        ("paper_anchor", "Anchor"),
        ("status", "Status"),
        ("detail", "Detail"),
        ("witness", "Witness"),
    ]
    FORMATS = ["json", "text", "csv"]

    def get_rows(self, report):
        return [entry.to_json() for entry in report.entries]

    def generate_json(self, report):
        return json.dumps(report.to_json(), indent=2) + "\n"

    def _status(self, status):
        styled = {
            "pass": self.style.SUCCESS,
            "fail": self.style.ERROR,
            "info": self.style.WARNING,
        }[status]
        return styled(status.upper().ljust(4))

    def generate_text(self, report):
        rows = self.get_rows(report)
        width = max((len(row["id"]) for row in rows), default=0)
        lines = [
            f"{self._status(row['status'])}  {row['id'].ljust(width)}  {row['paper_anchor']}: {row['detail']}"
            for row in rows
        ]
        summary = report.summary
        lines.append(
            f"seed {report.seed}: {summary['total']} checks, {summary['passed']} passed, "
            f"{summary['failed']} failed, {summary['info']} informational"
        )
        return "\n".join(lines) + "\n"
