/**
 * Reader for the samples CSV written by `dpcheck check --samples-out`:
 * a `which,distance` header, then one row per Monte Carlo draw with
 * `which` either `prior` or `posterior`.
 */

export interface SamplePair {
  prior: number[];
  posterior: number[];
}

export function parseSamplesCsv(text: string): SamplePair {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new Error("samples CSV is empty");
  }
  const header = lines[0].split(",").map((c) => c.trim().toLowerCase());
  const whichCol = header.indexOf("which");
  const distanceCol = header.indexOf("distance");
  if (whichCol < 0 || distanceCol < 0) {
    throw new Error(
      `samples CSV needs 'which' and 'distance' columns, header was '${lines[0]}'`,
    );
  }

  const pair: SamplePair = { prior: [], posterior: [] };
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",").map((c) => c.trim());
    const which = cells[whichCol];
    if (which !== "prior" && which !== "posterior") {
      throw new Error(`line ${i + 1}: 'which' must be prior or posterior, got '${which}'`);
    }
    const value = Number(cells[distanceCol]);
    if (!Number.isFinite(value)) {
      throw new Error(`line ${i + 1}: bad distance '${cells[distanceCol]}'`);
    }
    if (value < 0 || value > 1) {
      throw new Error(`line ${i + 1}: distance ${value} outside [0, 1]`);
    }
    pair[which].push(value);
  }
  if (pair.prior.length === 0) throw new Error("samples CSV has no prior rows");
  if (pair.posterior.length === 0) throw new Error("samples CSV has no posterior rows");
  return pair;
}
