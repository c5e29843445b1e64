// Client-side parsing of shapefile artifacts: a STORED zip of the file set,
// and the .shp record layout (big-endian headers, little-endian contents).

export type Geometry =
  | { type: 'point'; x: number; y: number }
  | { type: 'multipoint'; points: [number, number][] }
  | { type: 'polyline'; parts: [number, number][][] }
  | { type: 'polygon'; rings: [number, number][][] }

export interface ShpFile {
  shapeCode: number
  bbox: [number, number, number, number]
  features: Geometry[]
  sampled: boolean
}

const ZIP_LOCAL_SIG = 0x04034b50
export const MAX_PREVIEW_FEATURES = 5000

export function parseStoredZip(buf: ArrayBuffer): Map<string, Uint8Array> {
  const view = new DataView(buf)
  const out = new Map<string, Uint8Array>()
  let off = 0
  while (off + 30 <= buf.byteLength) {
    if (view.getUint32(off, true) !== ZIP_LOCAL_SIG) break
    const method = view.getUint16(off + 8, true)
    const compSize = view.getUint32(off + 18, true)
    const nameLen = view.getUint16(off + 26, true)
    const extraLen = view.getUint16(off + 28, true)
    const name = new TextDecoder().decode(new Uint8Array(buf, off + 30, nameLen))
    const dataStart = off + 30 + nameLen + extraLen
    if (method !== 0) {
      throw new Error(`zip entry ${name} is compressed (method ${method}); expected STORED`)
    }
    out.set(name, new Uint8Array(buf, dataStart, compSize))
    off = dataStart + compSize
  }
  if (out.size === 0) throw new Error('no zip entries found')
  return out
}

export function parseShp(bytes: Uint8Array, maxFeatures = MAX_PREVIEW_FEATURES): ShpFile {
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength)
  if (view.getInt32(0, false) !== 9994) throw new Error('bad shapefile magic')
  const shapeCode = view.getInt32(32, true)
  const bbox: [number, number, number, number] = [
    view.getFloat64(36, true),
    view.getFloat64(44, true),
    view.getFloat64(52, true),
    view.getFloat64(60, true),
  ]
  const features: Geometry[] = []
  let off = 100
  let sampled = false
  while (off + 8 <= bytes.byteLength) {
    const contentWords = view.getInt32(off + 4, false)
    const start = off + 8
    if (features.length >= maxFeatures) {
      sampled = true
      break
    }
    const geom = decodeRecord(view, start)
    if (geom) features.push(geom)
    off = start + contentWords * 2
  }
  return { shapeCode, bbox, features, sampled }
}

function readPoints(view: DataView, off: number, count: number): [number, number][] {
  const pts: [number, number][] = []
  for (let i = 0; i < count; i++) {
    pts.push([view.getFloat64(off + 16 * i, true), view.getFloat64(off + 16 * i + 8, true)])
  }
  return pts
}

function decodeRecord(view: DataView, off: number): Geometry | null {
  const code = view.getInt32(off, true)
  switch (code) {
    case 0:
      return null
    case 1:
      return { type: 'point', x: view.getFloat64(off + 4, true), y: view.getFloat64(off + 12, true) }
    case 8: {
      const n = view.getInt32(off + 36, true)
      return { type: 'multipoint', points: readPoints(view, off + 40, n) }
    }
    case 3:
    case 5: {
      const numParts = view.getInt32(off + 36, true)
      const numPoints = view.getInt32(off + 40, true)
      const partIdx: number[] = []
      for (let i = 0; i < numParts; i++) partIdx.push(view.getInt32(off + 44 + 4 * i, true))
      partIdx.push(numPoints)
      const pts = readPoints(view, off + 44 + 4 * numParts, numPoints)
      const parts: [number, number][][] = []
      for (let i = 0; i < numParts; i++) parts.push(pts.slice(partIdx[i], partIdx[i + 1]))
      return code === 3 ? { type: 'polyline', parts } : { type: 'polygon', rings: parts }
    }
    default:
      throw new Error(`unsupported shape code ${code}`)
  }
}

export function parseShpFromZip(buf: ArrayBuffer, maxFeatures = MAX_PREVIEW_FEATURES): ShpFile {
  const entries = parseStoredZip(buf)
  for (const [name, bytes] of entries) {
    if (name.toLowerCase().endsWith('.shp')) return parseShp(bytes, maxFeatures)
  }
  throw new Error('zip holds no .shp entry')
}
