// End-to-end against the real service in scripted mode: upload the fixture
// zip, submit the allocation prompt, follow the stream, check the rendered
// step count, then download the artifact and preview its geometry.

import assert from 'node:assert/strict'
import { after, before, test } from 'node:test'
import { spawn, execFileSync, ChildProcess } from 'node:child_process'
import { mkdtempSync, readFileSync } from 'node:fs'
import { tmpdir } from 'node:os'
import { join, resolve } from 'node:path'

import { createSession, getSession, streamEvents, submitTask, fetchArtifact } from '../src/api.js'
import { applyEvent, initialView, withArtifacts, SessionView } from '../src/model.js'
import { parseShpFromZip } from '../src/shp.js'
import { buildDrawing } from '../src/svg.js'

const PROMPT =
  'Allocate space around the facility points: generate Voronoi polygons, ' +
  'create a 500-meter buffer around the points, and clip the buffer with ' +
  'the Voronoi polygons. Save the result to output/allocated.shp.'

const repoRoot = resolve(import.meta.dirname ?? '.', '..', '..')
let server: ChildProcess
let base = ''
let zipPath = ''

before(async () => {
  const work = mkdtempSync(join(tmpdir(), 'shapegpt-e2e-'))
  zipPath = join(work, 'case1.zip')
  execFileSync('python3', ['-m', 'shapegpt.cli', 'fixtures', 'case1', '--out', zipPath], {
    cwd: repoRoot,
  })
  server = spawn(
    'python3',
    ['-m', 'shapegpt.cli', 'serve', '--scripted-case1', '--port', '0', '--root', join(work, 'svc')],
    { cwd: repoRoot, stdio: ['ignore', 'pipe', 'inherit'] },
  )
  base = await new Promise<string>((resolvePort, reject) => {
    const timer = setTimeout(() => reject(new Error('service did not start')), 20000)
    let out = ''
    server.stdout!.on('data', (chunk) => {
      out += String(chunk)
      const m = out.match(/listening on (http:\/\/[\d.]+:\d+)/)
      if (m) {
        clearTimeout(timer)
        resolvePort(m[1])
      }
    })
    server.on('exit', (code) => reject(new Error(`service exited early (${code})`)))
  })
})

after(() => {
  server?.kill()
})

test('upload, run, observe three plan steps, preview the artifact', async () => {
  const archive = readFileSync(zipPath)
  const info = await createSession(base, archive.buffer.slice(archive.byteOffset, archive.byteOffset + archive.byteLength) as ArrayBuffer)
  assert.equal(info.layers.length, 1)
  assert.equal(info.layers[0].name, 'facilities')
  assert.equal(info.layers[0].feature_count, 5)

  let view: SessionView = initialView(info.id)
  await submitTask(base, info.id, PROMPT)
  await streamEvents(base, info.id, 0, (payload) => {
    view = applyEvent(view, payload)
  })

  assert.equal(view.status, 'finished')
  assert.equal(view.steps.length, 3) // the planner decomposed into 3 steps
  assert.ok(view.steps.every((s) => s.status === 'done'))

  const session = await getSession(base, info.id)
  view = withArtifacts(view, session.artifacts)
  assert.ok(view.artifacts.includes('output/allocated.shp'))

  const blob = await fetchArtifact(base, info.id, 'output/allocated.shp')
  const shp = parseShpFromZip(blob)
  assert.equal(shp.shapeCode, 5)
  assert.equal(shp.features.length, 5) // one clipped buffer per facility
  const drawing = buildDrawing(shp.features, shp.bbox)
  assert.equal(drawing.paths.length, 5)
  assert.ok(drawing.paths.every((p) => p.kind === 'polygon'))
})

test('stream resume sees no duplicates', async () => {
  const archive = readFileSync(zipPath)
  const info = await createSession(base, archive.buffer.slice(archive.byteOffset, archive.byteOffset + archive.byteLength) as ArrayBuffer)
  let view: SessionView = initialView(info.id)
  await submitTask(base, info.id, PROMPT)
  await streamEvents(base, info.id, 0, (payload) => {
    view = applyEvent(view, payload)
  })
  const stepsBefore = view.steps.length
  const callsBefore = view.steps.map((s) => s.calls.length)
  // replay the whole finished stream into the same view
  await streamEvents(base, info.id, 0, (payload) => {
    view = applyEvent(view, payload)
  })
  assert.equal(view.steps.length, stepsBefore)
  assert.deepEqual(view.steps.map((s) => s.calls.length), callsBefore)
})

test('busy and error surfaces propagate', async () => {
  const archive = readFileSync(zipPath)
  const info = await createSession(base, archive.buffer.slice(archive.byteOffset, archive.byteOffset + archive.byteLength) as ArrayBuffer)
  await submitTask(base, info.id, PROMPT)
  await assert.rejects(
    () => submitTask(base, info.id, 'again'),
    (e: any) => e.kind === 'SessionBusy',
  )
  await streamEvents(base, info.id, 0, () => {}) // drain
  await assert.rejects(
    () => createSession(base, new TextEncoder().encode('junk').buffer as ArrayBuffer),
    (e: any) => e.kind === 'BadArchive',
  )
})
