// DOM wiring: upload, submit, live step log, artifact links, SVG preview.

import { artifactUrl, createSession, fetchArtifact, getSession, streamEvents, submitTask } from './api.js'
import { applyEvent, initialView, withArtifacts, SessionView } from './model.js'
import { parseShpFromZip } from './shp.js'
import { buildDrawing } from './svg.js'

const base = (window as any).SHAPEGPT_BASE ?? `http://${location.hostname}:8040`

const el = (id: string) => document.getElementById(id)!

let view: SessionView | null = null

function render() {
  if (!view) return
  el('status').textContent = view.status
  el('status').className = `badge ${view.status}`
  const steps = el('steps')
  steps.innerHTML = ''
  view.steps.forEach((step, i) => {
    const li = document.createElement('li')
    li.className = `step ${step.status}`
    const head = document.createElement('div')
    head.textContent = `${i + 1}. ${step.instruction}`
    head.className = 'step-head'
    li.appendChild(head)
    const calls = document.createElement('ul')
    for (const call of step.calls) {
      const row = document.createElement('li')
      row.className = `call ${call.status}`
      row.textContent = `${call.name} [${call.status}] ${call.message}`
      calls.appendChild(row)
    }
    li.appendChild(calls)
    if (step.summary) {
      const sum = document.createElement('div')
      sum.className = 'step-summary'
      sum.textContent = step.summary
      li.appendChild(sum)
    }
    steps.appendChild(li)
  })
  if (view.summary) el('summary').textContent = view.summary

  const artifacts = el('artifacts')
  artifacts.innerHTML = ''
  for (const name of view.artifacts) {
    if (!name.endsWith('.shp') && !name.endsWith('.csv') && !name.endsWith('.png')) continue
    const li = document.createElement('li')
    const a = document.createElement('a')
    a.href = artifactUrl(base, view.sessionId, name)
    a.textContent = name
    a.setAttribute('download', '')
    li.appendChild(a)
    if (name.endsWith('.shp')) {
      const btn = document.createElement('button')
      btn.textContent = 'preview'
      btn.onclick = () => previewArtifact(name)
      li.appendChild(btn)
    }
    artifacts.appendChild(li)
  }
}

async function previewArtifact(name: string) {
  if (!view) return
  const target = el('preview')
  try {
    const buf = await fetchArtifact(base, view.sessionId, name)
    const shp = parseShpFromZip(buf)
    const drawing = buildDrawing(shp.features, shp.bbox)
    const ns = 'http://www.w3.org/2000/svg'
    const svg = document.createElementNS(ns, 'svg')
    svg.setAttribute('viewBox', `0 0 ${drawing.width} ${drawing.height}`)
    for (const p of drawing.paths) {
      const path = document.createElementNS(ns, 'path')
      path.setAttribute('d', p.d)
      path.setAttribute('class', p.kind)
      if (p.kind === 'polygon') path.setAttribute('fill-rule', 'evenodd')
      svg.appendChild(path)
    }
    for (const dot of drawing.dots) {
      const c = document.createElementNS(ns, 'circle')
      c.setAttribute('cx', String(dot.cx))
      c.setAttribute('cy', String(dot.cy))
      c.setAttribute('r', '3')
      svg.appendChild(c)
    }
    target.innerHTML = ''
    target.appendChild(svg)
    el('preview-note').textContent = shp.sampled
      ? `showing the first ${shp.features.length} features (sampled)`
      : `${shp.features.length} feature(s)`
  } catch (e) {
    target.textContent = `preview unavailable (${e}); use the download link`
  }
}

async function onUpload() {
  const input = el('file') as HTMLInputElement
  const file = input.files?.[0]
  if (!file) return
  try {
    const info = await createSession(base, file)
    view = initialView(info.id)
    el('upload-error').textContent = ''
    el('layers').innerHTML = info.layers
      .map((l) => `<li><b>${l.name}</b>: ${l.shape_kind}, ${l.feature_count} feature(s)</li>`)
      .join('')
    ;(el('go') as HTMLButtonElement).disabled = false
    render()
  } catch (e: any) {
    el('upload-error').textContent = `${e.kind ?? 'Error'}: ${e.message}`
  }
}

async function onSubmit() {
  if (!view) return
  const prompt = (el('prompt') as HTMLTextAreaElement).value.trim()
  if (!prompt) return
  const go = el('go') as HTMLButtonElement
  go.disabled = true
  try {
    await submitTask(base, view.sessionId, prompt)
    view = { ...view, status: 'running' }
    render()
    // follow the stream, resuming across interruptions
    for (;;) {
      await streamEvents(base, view.sessionId, view.lastSeq, (payload) => {
        view = applyEvent(view!, payload)
        render()
      })
      if (view.status === 'finished' || view.status === 'failed') break
    }
    const info = await getSession(base, view.sessionId)
    view = withArtifacts(view, info.artifacts)
    render()
  } catch (e: any) {
    el('summary').textContent = `${e.kind ?? 'Error'}: ${e.message}`
    if (e.kind !== 'SessionBusy') go.disabled = false
  }
}

el('file').addEventListener('change', onUpload)
el('go').addEventListener('click', onSubmit)
