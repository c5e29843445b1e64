import assert from 'node:assert/strict'
import { test } from 'node:test'

import { parseShp, parseShpFromZip, parseStoredZip } from '../src/shp.js'
import { buildDrawing, drawingBounds, fitTransform, project } from '../src/svg.js'

// -- tiny writers mirroring the binary formats, for fixtures ------------------

function shpBytes(records: Uint8Array[], shapeCode: number, bbox: number[]): Uint8Array {
  const total = 100 + records.reduce((n, r) => n + 8 + r.length, 0)
  const buf = new Uint8Array(total)
  const view = new DataView(buf.buffer)
  view.setInt32(0, 9994, false)
  view.setInt32(24, total / 2, false)
  view.setInt32(28, 1000, true)
  view.setInt32(32, shapeCode, true)
  bbox.forEach((v, i) => view.setFloat64(36 + 8 * i, v, true))
  let off = 100
  records.forEach((rec, i) => {
    view.setInt32(off, i + 1, false)
    view.setInt32(off + 4, rec.length / 2, false)
    buf.set(rec, off + 8)
    off += 8 + rec.length
  })
  return buf
}

function pointRecord(x: number, y: number): Uint8Array {
  const rec = new Uint8Array(20)
  const view = new DataView(rec.buffer)
  view.setInt32(0, 1, true)
  view.setFloat64(4, x, true)
  view.setFloat64(12, y, true)
  return rec
}

function polygonRecord(rings: [number, number][][]): Uint8Array {
  const numPoints = rings.reduce((n, r) => n + r.length, 0)
  const rec = new Uint8Array(44 + 4 * rings.length + 16 * numPoints)
  const view = new DataView(rec.buffer)
  view.setInt32(0, 5, true)
  view.setInt32(36, rings.length, true)
  view.setInt32(40, numPoints, true)
  let idx = 0
  rings.forEach((r, i) => {
    view.setInt32(44 + 4 * i, idx, true)
    idx += r.length
  })
  let off = 44 + 4 * rings.length
  for (const ring of rings) {
    for (const [x, y] of ring) {
      view.setFloat64(off, x, true)
      view.setFloat64(off + 8, y, true)
      off += 16
    }
  }
  return rec
}

function storedZip(entries: [string, Uint8Array][]): ArrayBuffer {
  const chunks: Uint8Array[] = []
  for (const [name, data] of entries) {
    const nameBytes = new TextEncoder().encode(name)
    const head = new Uint8Array(30 + nameBytes.length)
    const view = new DataView(head.buffer)
    view.setUint32(0, 0x04034b50, true)
    view.setUint16(4, 20, true)
    view.setUint16(8, 0, true) // STORED
    view.setUint32(18, data.length, true)
    view.setUint32(22, data.length, true)
    view.setUint16(26, nameBytes.length, true)
    head.set(nameBytes, 30)
    chunks.push(head, data)
  }
  const total = chunks.reduce((n, c) => n + c.length, 0)
  const out = new Uint8Array(total)
  let off = 0
  for (const c of chunks) {
    out.set(c, off)
    off += c.length
  }
  return out.buffer
}

const SQUARE: [number, number][] = [[0, 0], [0, 1], [1, 1], [1, 0], [0, 0]]

test('parses point records', () => {
  const bytes = shpBytes([pointRecord(3, 4), pointRecord(-1, 2)], 1, [-1, 2, 3, 4])
  const shp = parseShp(bytes)
  assert.equal(shp.shapeCode, 1)
  assert.equal(shp.features.length, 2)
  assert.deepEqual(shp.features[0], { type: 'point', x: 3, y: 4 })
})

test('parses polygon rings with holes', () => {
  const hole: [number, number][] = [[0.25, 0.25], [0.75, 0.25], [0.75, 0.75], [0.25, 0.75], [0.25, 0.25]]
  const bytes = shpBytes([polygonRecord([SQUARE, hole])], 5, [0, 0, 1, 1])
  const shp = parseShp(bytes)
  assert.equal(shp.features.length, 1)
  const poly = shp.features[0]
  assert.equal(poly.type, 'polygon')
  if (poly.type === 'polygon') {
    assert.equal(poly.rings.length, 2)
    assert.equal(poly.rings[0].length, 5)
  }
})

test('feature cap marks sampling', () => {
  const records = Array.from({ length: 12 }, (_, i) => pointRecord(i, i))
  const bytes = shpBytes(records, 1, [0, 0, 11, 11])
  const shp = parseShp(bytes, 10)
  assert.equal(shp.features.length, 10)
  assert.equal(shp.sampled, true)
})

test('stored zip roundtrip and shp extraction', () => {
  const shpData = shpBytes([polygonRecord([SQUARE])], 5, [0, 0, 1, 1])
  const zip = storedZip([
    ['result.shp', shpData],
    ['result.dbf', new Uint8Array([0x03, 0, 0, 0])],
  ])
  const entries = parseStoredZip(zip)
  assert.deepEqual([...entries.keys()].sort(), ['result.dbf', 'result.shp'])
  const shp = parseShpFromZip(zip)
  assert.equal(shp.features.length, 1)
})

test('bad magic rejected', () => {
  const junk = new Uint8Array(120)
  assert.throws(() => parseShp(junk), /magic/)
})

test('drawing fits the extent and keeps feature count', () => {
  const bytes = shpBytes(
    [polygonRecord([SQUARE]), pointRecord(0.5, 0.5)],
    5,
    [0, 0, 1, 1],
  )
  const shp = parseShp(bytes)
  const drawing = buildDrawing(shp.features, shp.bbox, 640, 640)
  assert.equal(drawing.paths.length, 1)
  assert.equal(drawing.dots.length, 1)
  const [x0, y0, x1, y1] = drawingBounds(drawing)
  assert.ok(x0 >= 0 && y0 >= 0 && x1 <= 640 && y1 <= 640)
  // preview bbox matches the artifact bbox within rounding: corners project
  // onto the drawing bounds
  const t = fitTransform(shp.bbox, 640, 640)
  const [cx0, cy1] = project(t, shp.bbox[0], shp.bbox[1])
  const [cx1, cy0] = project(t, shp.bbox[2], shp.bbox[3])
  assert.ok(Math.abs(cx0 - x0) < 1 && Math.abs(cx1 - x1) < 1)
  assert.ok(Math.abs(cy0 - y0) < 1 && Math.abs(cy1 - y1) < 1)
})
