"""
PDF-Export für Analyse- und Golden-Berichte
"""
import io
from datetime import datetime
from xml.sax.saxutils import escape

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.units import cm
from reportlab.platypus import SimpleDocTemplate, Table, TableStyle, Paragraph, Spacer

# Helvetica kennt nur Latin-1
GLYPHS = {'∅': '(leer)', 'χ': 'chi', 'φ': 'phi', 'μ': 'mu', 'ℓ': 'l', '0̂': '0'}


def pdf_text(value) -> str:
    text = str(value)
    for glyph, plain in GLYPHS.items():
        text = text.replace(glyph, plain)
    return text.encode('latin-1', errors='replace').decode('latin-1')


def _summary_rows(data):
    payload = data['payload']
    rows = [
        ['Befehl:', f"{data['command']} / {data['check']}"],
        ['n:', str(data['n'])],
        ['Population:', str(data['population'])],
        ['Status:', 'bestanden' if data['passed'] else 'fehlgeschlagen'],
    ]
    for key in ('permutation', 'br', 're', 'ao', 'betti'):
        if key in payload:
            rows.append([f"{key}:", pdf_text(payload[key])])
    if 'chromatic' in payload:
        rows.append(['chi(t):', payload['chromatic']['text']])
    if 'distance_polynomial' in payload:
        rows.append(['Abstandspolynom:', payload['distance_polynomial']['text']])
    return rows


def create_report_pdf(report):
    """Erstellt PDF aus einem Bericht"""
    data = report.to_dict()

    # PDF in Memory erstellen
    buffer = io.BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=A4,
                            rightMargin=2*cm, leftMargin=2*cm,
                            topMargin=2*cm, bottomMargin=2*cm)
    elements = []

    # Styles
    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'CustomTitle',
        parent=styles['Heading1'],
        fontSize=22,
        textColor=colors.HexColor('#667eea'),
        spaceAfter=24,
        alignment=TA_CENTER
    )
    heading_style = ParagraphStyle(
        'CustomHeading',
        parent=styles['Heading2'],
        fontSize=14,
        textColor=colors.HexColor('#333333'),
        spaceAfter=12,
        spaceBefore=12
    )

    # Titel
    elements.append(Paragraph(f"chromobruhat {data['command']}", title_style))
    elements.append(Paragraph(f"Version {data['version']}", styles['Normal']))
    elements.append(Paragraph(f"Erstellt am: {datetime.now().strftime('%d.%m.%Y %H:%M')}", styles['Normal']))
    elements.append(Spacer(1, 0.5*cm))

    # Übersicht
    stats_table = Table(_summary_rows(data), colWidths=[5*cm, 11*cm])
    stats_table.setStyle(TableStyle([
        ('BACKGROUND', (0, 0), (-1, -1), colors.HexColor('#f8f9fa')),
        ('TEXTCOLOR', (0, 0), (-1, -1), colors.black),
        ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
        ('FONTNAME', (0, 0), (0, -1), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, -1), 10),
        ('BOTTOMPADDING', (0, 0), (-1, -1), 8),
        ('GRID', (0, 0), (-1, -1), 1, colors.HexColor('#e0e0e0'))
    ]))
    elements.append(stats_table)
    elements.append(Spacer(1, 1*cm))

    # Kettentabelle
    table = data['payload'].get('phi_table') or data['payload'].get('chains')
    if table:
        elements.append(Paragraph("Ketten und Bilder unter phi", heading_style))
        rows = [['Kette', 'p(C)', 'Bild', 'reduziertes Wort']]
        for entry in table:
            rows.append([pdf_text(entry[k]) for k in ('labels', 'product', 'image', 'image_word')])
        chain_table = Table(rows, colWidths=[4*cm, 4*cm, 3*cm, 5*cm])
        chain_table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#667eea')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 9),
            ('BOTTOMPADDING', (0, 0), (-1, -1), 6),
            ('GRID', (0, 0), (-1, -1), 1, colors.grey)
        ]))
        elements.append(chain_table)

    # Gegenbeispiele
    if data['counterexamples']:
        elements.append(Paragraph("Gegenbeispiele", heading_style))
        for entry in data['counterexamples']:
            elements.append(Paragraph(escape(pdf_text(entry)), styles['Normal']))

    # PDF generieren
    doc.build(elements)
    buffer.seek(0)
    return buffer


def export_report_pdf(report, output_path):
    """Exportiert Bericht als PDF-Datei"""
    pdf_buffer = create_report_pdf(report)
    with open(output_path, 'wb') as f:
        f.write(pdf_buffer.read())
    return output_path
