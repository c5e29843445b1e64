import assert from 'node:assert/strict'
import { test } from 'node:test'

import { SseParser } from '../src/sse.js'

test('parses complete frames', () => {
  const p = new SseParser()
  const frames = p.feed('id: 1\ndata: {"a":1}\n\nid: 2\ndata: {"a":2}\n\n')
  assert.equal(frames.length, 2)
  assert.deepEqual(frames[0], { id: 1, event: 'message', data: '{"a":1}' })
  assert.equal(frames[1].id, 2)
})

test('handles arbitrary chunk splits', () => {
  const p = new SseParser()
  const whole = 'id: 7\ndata: {"x":"hello world"}\n\nevent: end\ndata: {}\n\n'
  let frames: ReturnType<SseParser['feed']> = []
  for (const ch of whole) frames = frames.concat(p.feed(ch))
  assert.equal(frames.length, 2)
  assert.equal(frames[0].id, 7)
  assert.equal(frames[1].event, 'end')
})

test('multi-line data joins with newline', () => {
  const p = new SseParser()
  const frames = p.feed('data: one\ndata: two\n\n')
  assert.equal(frames[0].data, 'one\ntwo')
})

test('comments and CR line endings ignored', () => {
  const p = new SseParser()
  const frames = p.feed(': keepalive\r\nid: 3\r\ndata: {}\r\n\r\n')
  assert.equal(frames.length, 1)
  assert.equal(frames[0].id, 3)
})
