// Incremental server-sent-events parser. Feed raw text chunks in any split;
// complete frames come out as events.

export interface SseFrame {
  id: number | null
  event: string
  data: string
}

export class SseParser {
  private buffer = ''
  private id: number | null = null
  private event = 'message'
  private data: string[] = []

  feed(chunk: string): SseFrame[] {
    this.buffer += chunk
    const frames: SseFrame[] = []
    for (;;) {
      const nl = this.buffer.indexOf('\n')
      if (nl < 0) break
      const line = this.buffer.slice(0, nl).replace(/\r$/, '')
      this.buffer = this.buffer.slice(nl + 1)
      if (line === '') {
        if (this.data.length > 0 || this.event !== 'message') {
          frames.push({ id: this.id, event: this.event, data: this.data.join('\n') })
        }
        this.id = null
        this.event = 'message'
        this.data = []
        continue
      }
      if (line.startsWith(':')) continue
      const colon = line.indexOf(':')
      const field = colon < 0 ? line : line.slice(0, colon)
      let value = colon < 0 ? '' : line.slice(colon + 1)
      if (value.startsWith(' ')) value = value.slice(1)
      if (field === 'id') {
        const n = Number(value)
        this.id = Number.isFinite(n) ? n : null
      } else if (field === 'event') {
        this.event = value
      } else if (field === 'data') {
        this.data.push(value)
      }
    }
    return frames
  }
}
