// Session view-model: folds the service event stream into the state the UI
// renders. Pure and order-strict; replayed sequence numbers are ignored so a
// stream reconnect can never duplicate rows.

export interface ToolCallRow {
  name: string
  verdict: string
  status: 'pending' | 'ok' | 'error'
  message: string
}

export interface PlanStep {
  id: number
  instruction: string
  status: 'running' | 'done' | 'failed'
  summary: string
  calls: ToolCallRow[]
}

export interface SessionView {
  sessionId: string
  status: 'idle' | 'running' | 'finished' | 'failed'
  steps: PlanStep[]
  artifacts: string[]
  summary: string
  lastSeq: number
}

export function initialView(sessionId: string): SessionView {
  return { sessionId, status: 'idle', steps: [], artifacts: [], summary: '', lastSeq: 0 }
}

interface EventPayload {
  seq: number
  type: string
  [key: string]: unknown
}

export function applyEvent(view: SessionView, payload: EventPayload): SessionView {
  if (payload.seq <= view.lastSeq) return view // reconnect replay
  const next: SessionView = { ...view, steps: view.steps.slice(), lastSeq: payload.seq }
  switch (payload.type) {
    case 'session_start':
      next.status = 'running'
      break
    case 'subtask':
      next.steps.push({
        id: payload.id as number,
        instruction: payload.instruction as string,
        status: 'running',
        summary: '',
        calls: [],
      })
      break
    case 'tool_call': {
      const step = findStep(next, payload.subtask as number)
      if (step) {
        step.calls = step.calls.concat([
          {
            name: payload.name as string,
            verdict: (payload.verdict as string) ?? '',
            status: 'pending',
            message: '',
          },
        ])
      }
      break
    }
    case 'tool_result': {
      const step = findStep(next, payload.subtask as number)
      if (step) {
        const calls = step.calls.slice()
        for (let i = calls.length - 1; i >= 0; i--) {
          if (calls[i].status === 'pending' && calls[i].name === payload.name) {
            calls[i] = {
              ...calls[i],
              status: payload.status === 'ok' ? 'ok' : 'error',
              message: (payload.message as string) ?? '',
            }
            break
          }
        }
        step.calls = calls
      }
      break
    }
    case 'subtask_report': {
      const step = findStep(next, payload.id as number)
      if (step) {
        step.status = payload.success ? 'done' : 'failed'
        step.summary = (payload.summary as string) ?? ''
      }
      break
    }
    case 'session_end':
      next.status = payload.success ? 'finished' : 'failed'
      next.summary = (payload.summary as string) ?? ''
      break
    default:
      break
  }
  return next
}

function findStep(view: SessionView, id: number): PlanStep | undefined {
  const idx = view.steps.findIndex((s) => s.id === id)
  if (idx < 0) return undefined
  const copy = { ...view.steps[idx], calls: view.steps[idx].calls }
  view.steps[idx] = copy
  return copy
}

export function withArtifacts(view: SessionView, artifacts: string[]): SessionView {
  return { ...view, artifacts: artifacts.slice() }
}
