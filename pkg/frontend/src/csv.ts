/**
 * Minimal strict CSV reading for the artifact schemas this package consumes.
 * The producers never quote or escape fields, so a plain comma split is the
 * whole grammar; anything structurally off should fail loudly here rather
 * than render garbage.
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: no header line");
  }
  const header = lines[0]!.split(",");
  const rows: string[][] = [];
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${i + 2} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    rows.push(cells);
  }
  if (rows.length === 0) {
    throw new SchemaError("no data rows under the header");
  }
  return { header, rows };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(`missing column "${name}" (header: ${table.header.join(",")})`);
  }
  return idx;
}

export function numericColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row, i) => {
    const v = Number(row[idx]);
    if (!Number.isFinite(v)) {
      throw new SchemaError(`column "${name}" row ${i + 2}: not a number (${row[idx]})`);
    }
    return v;
  });
}
