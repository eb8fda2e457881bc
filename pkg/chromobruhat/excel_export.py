"""
Excel-Export für Verifikationsberichte
"""
from io import BytesIO

from openpyxl import Workbook
from openpyxl.styles import Font, Alignment, PatternFill, Border, Side


def _style_header(ws, row, headers, header_font, header_fill, header_alignment, border):
    for col, header in enumerate(headers, start=1):
        cell = ws.cell(row=row, column=col, value=header)
        cell.font = header_font
        cell.fill = header_fill
        cell.alignment = header_alignment
        cell.border = border


def _cell_value(value):
    if isinstance(value, (list, dict)):
        return str(value)
    return value


def create_excel_export(report):
    """
    Erstellt einen Excel-Export eines Berichts.

    Args:
        report: Report aus chromobruhat.verifier

    Returns:
        BytesIO: Excel-Datei als Byte-Stream
    """
    data = report.to_dict()
    wb = Workbook()
    ws = wb.active
    ws.title = "Übersicht"

    # Styles
    header_font = Font(bold=True, size=12, color="FFFFFF")
    header_fill = PatternFill(start_color="667eea", end_color="667eea", fill_type="solid")
    header_alignment = Alignment(horizontal="center", vertical="center", wrap_text=True)
    subheader_font = Font(bold=True, size=11)
    subheader_fill = PatternFill(start_color="E0E0E0", end_color="E0E0E0", fill_type="solid")
    border = Border(
        left=Side(style='thin'),
        right=Side(style='thin'),
        top=Side(style='thin'),
        bottom=Side(style='thin')
    )

    # Titel
    ws['A1'] = f"chromobruhat {data['command']} - {data['check']}"
    ws['A1'].font = Font(bold=True, size=14)
    ws.merge_cells('A1:D1')

    _style_header(ws, 3, ['Feld', 'Wert'], header_font, header_fill, header_alignment, border)
    summary = [
        ('Version', data['version']),
        ('Schema', data['schema_version']),
        ('n', data['n']),
        ('Population', data['population']),
        ('Bestanden', 'ja' if data['passed'] else 'nein'),
        ('Fehlschläge', data['failures']),
        ('Laufzeit (s)', data['elapsed_seconds']),
    ]
    row = 4
    for label, value in summary:
        ws.cell(row=row, column=1, value=label).border = border
        ws.cell(row=row, column=2, value=value).border = border
        row += 1

    # Payload-Skalare
    row += 1
    ws.cell(row=row, column=1, value='Payload').font = subheader_font
    ws.cell(row=row, column=1).fill = subheader_fill
    row += 1
    for key, value in data['payload'].items():
        if key in ('phi_table', 'chains'):
            continue
        ws.cell(row=row, column=1, value=key).border = border
        ws.cell(row=row, column=2, value=_cell_value(value)).border = border
        row += 1
    ws.column_dimensions['A'].width = 22
    ws.column_dimensions['B'].width = 60

    # Gegenbeispiele
    ws_ce = wb.create_sheet("Gegenbeispiele")
    keys = sorted({k for entry in data['counterexamples'] for k in entry})
    if keys:
        _style_header(ws_ce, 1, keys, header_font, header_fill, header_alignment, border)
        for r, entry in enumerate(data['counterexamples'], start=2):
            for c, key in enumerate(keys, start=1):
                ws_ce.cell(row=r, column=c, value=_cell_value(entry.get(key))).border = border
    else:
        ws_ce['A1'] = 'Keine Gegenbeispiele'

    # Kettentabelle
    table = data['payload'].get('phi_table') or data['payload'].get('chains')
    if table:
        ws_phi = wb.create_sheet("Ketten")
        headers = ['labels', 'product', 'image', 'image_word']
        _style_header(ws_phi, 1, headers, header_font, header_fill, header_alignment, border)
        for r, entry in enumerate(table, start=2):
            for c, key in enumerate(headers, start=1):
                ws_phi.cell(row=r, column=c, value=entry.get(key)).border = border
        for col in 'ABCD':
            ws_phi.column_dimensions[col].width = 18

    # Excel-Datei in BytesIO speichern
    excel_buffer = BytesIO()
    wb.save(excel_buffer)
    excel_buffer.seek(0)
    return excel_buffer
