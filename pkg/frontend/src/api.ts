// Thin client for the session service HTTP surface.

import { SseParser } from './sse.js'

export interface LayerInfo {
  name: string
  shape_kind: string
  feature_count: number
  fields: [string, string, number][]
  summary: string
}

export interface SessionInfo {
  id: string
  status: string
  layers: LayerInfo[]
  artifacts: string[]
  summary: string
}

export class ServiceError extends Error {
  kind: string
  constructor(kind: string, message: string) {
    super(message)
    this.kind = kind
  }
}

async function jsonOrThrow(resp: Response): Promise<any> {
  const body = await resp.json().catch(() => ({}))
  if (!resp.ok) {
    throw new ServiceError(body.error ?? `HTTP${resp.status}`, body.message ?? resp.statusText)
  }
  return body
}

export async function createSession(base: string, archive: Blob | ArrayBuffer): Promise<SessionInfo> {
  const resp = await fetch(`${base}/sessions`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/zip' },
    body: archive,
  })
  return jsonOrThrow(resp)
}

export async function submitTask(base: string, id: string, prompt: string): Promise<void> {
  const resp = await fetch(`${base}/sessions/${id}/task`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ prompt }),
  })
  await jsonOrThrow(resp)
}

export async function getSession(base: string, id: string): Promise<SessionInfo> {
  return jsonOrThrow(await fetch(`${base}/sessions/${id}`))
}

export async function fetchArtifact(base: string, id: string, name: string): Promise<ArrayBuffer> {
  const resp = await fetch(`${base}/sessions/${id}/artifacts/${name}`)
  if (!resp.ok) throw new ServiceError(`HTTP${resp.status}`, `artifact ${name}`)
  return resp.arrayBuffer()
}

export function artifactUrl(base: string, id: string, name: string): string {
  return `${base}/sessions/${id}/artifacts/${name}`
}

// Streams the event log from `since`; calls onEvent for every data frame and
// resolves when the server signals the end of the stream.
export async function streamEvents(
  base: string,
  id: string,
  since: number,
  onEvent: (payload: any) => void,
): Promise<void> {
  const resp = await fetch(`${base}/sessions/${id}/events?since=${since}`)
  if (!resp.ok || !resp.body) {
    throw new ServiceError(`HTTP${resp.status}`, 'event stream unavailable')
  }
  const reader = resp.body.getReader()
  const decoder = new TextDecoder()
  const parser = new SseParser()
  for (;;) {
    const { done, value } = await reader.read()
    if (done) return
    for (const frame of parser.feed(decoder.decode(value, { stream: true }))) {
      if (frame.event === 'end') return
      if (frame.data) onEvent(JSON.parse(frame.data))
    }
  }
}
