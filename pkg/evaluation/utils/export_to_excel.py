from openpyxl import Workbook
from openpyxl.utils import get_column_letter


def write_sheet(worksheet, columns, rows, footer=None):
    """Header with column widths, numbered rows, and an optional footer merged over the first two columns."""
    row_num = 1

    for col_num, (column_title, column_width) in enumerate(columns, 1):
        cell = worksheet.cell(row=row_num, column=col_num)
        cell.value = column_title
        column_letter = get_column_letter(col_num)
        worksheet.column_dimensions[column_letter].width = column_width

    for item, row in enumerate(rows, 1):
        row_num += 1
        for col_num, cell_value in enumerate([item, *row], 1):
            worksheet.cell(row=row_num, column=col_num).value = cell_value

    if footer is not None:
        last_row = worksheet.max_row
        worksheet.append(footer)
        worksheet.merge_cells(f'A{last_row + 1}:B{last_row + 1}')


def export_ablation(cells, path, grid):
    workbook = Workbook()
    worksheet = workbook.active
    worksheet.title = grid.title()

    stat_names = sorted({name for cell in cells for name in cell.graph_stats})
    columns = [
        ('#', 5),
        ('Configuration', 20),
        ('F1', 12),
        ('R_oov', 12),
        ('Seeds', 12),
    ] + [(name, 15) for name in stat_names]
    rows = [
        [cell.name, round(cell.f1, 4), round(cell.oov_recall, 4), ','.join(map(str, cell.seeds))]
        + [cell.graph_stats.get(name, 0) for name in stat_names]
        for cell in cells
    ]
    write_sheet(worksheet, columns, rows)
    workbook.save(path)
    return path


def export_sweep(points, path, monotonic):
    workbook = Workbook()
    worksheet = workbook.active
    worksheet.title = 'Sweep'

    columns = [
        ('#', 5),
        ('Fraction', 12),
        ('N-grams', 12),
        ('F1', 12),
        ('R_oov', 12),
    ]
    rows = [[point.fraction, point.vocab_size, round(point.f1, 4), round(point.oov_recall, 4)]
            for point in points]
    write_sheet(worksheet, columns, rows, footer=['Monotonic R_oov', '', 'yes' if monotonic else 'no'])
    workbook.save(path)
    return path
